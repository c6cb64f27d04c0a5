"""Run the phasespace command line from a checkout: ``python main.py <command> ...``."""

from src.apps.cli.main import main

if __name__ == "__main__":
    raise SystemExit(main())
