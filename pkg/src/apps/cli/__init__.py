"""Command-line front end; the entry point is :func:`src.apps.cli.main.main`."""
