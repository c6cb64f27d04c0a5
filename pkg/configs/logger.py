"""Application-wide logging utilities."""

from __future__ import annotations

import logging
import os
import time
from contextlib import contextmanager
from typing import Iterator, Optional

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FORMAT = os.getenv(
    "LOG_FORMAT",
    "%(asctime)s | %(levelname)s | %(name)s | %(message)s",
)


def _format_value(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


class AppLogger:
    """Factory for configured loggers with optional structured prefixes."""

    def __init__(self, level: str = LOG_LEVEL, fmt: str = LOG_FORMAT) -> None:
        self.level = getattr(logging, level, logging.INFO)
        self.format = fmt
        self._configure_root()

    def _configure_root(self) -> None:
        logging.basicConfig(level=self.level, format=self.format)

    def set_level(self, level: str) -> None:
        """Change the level of every logger handed out so far (CLI ``--log-level``)."""
        self.level = getattr(logging, level.upper(), logging.INFO)
        logging.getLogger().setLevel(self.level)
        for name in logging.root.manager.loggerDict:
            if name.startswith(("src", "configs")):
                logging.getLogger(name).setLevel(self.level)

    def get_logger(self, name: str, *, extra_prefix: Optional[str] = None) -> logging.Logger:
        """Return a logger, optionally wrapped so messages carry ``[prefix]``."""
        logger = logging.getLogger(name)
        logger.setLevel(self.level)

        if extra_prefix:
            prefix = extra_prefix.strip()

            class PrefixAdapter(logging.LoggerAdapter):
                def process(self, msg, kwargs):  # type: ignore[override]
                    return f"[{prefix}] {msg}", kwargs

            return PrefixAdapter(logger, {})  # type: ignore[return-value]

        return logger

    def log_kv(self, logger: logging.Logger, level: int, message: str, **kv: object) -> None:
        """Log a message with key=value pairs appended (floats in 6 significant digits)."""
        kv_part = " ".join(f"{k}={_format_value(v)}" for k, v in kv.items())
        full_msg = f"{message} | {kv_part}" if kv_part else message
        logger.log(level, full_msg)

    @contextmanager
    def timed(self, logger: logging.Logger, message: str, **kv: object) -> Iterator[dict]:
        """Log ``message`` with its wall time once the block exits.

        The yielded dict can be filled inside the block; its entries are
        appended to the closing record.
        """
        extra: dict = {}
        start = time.perf_counter()
        try:
            yield extra
        finally:
            elapsed = time.perf_counter() - start
            self.log_kv(logger, logging.INFO, message, **kv, **extra, seconds=elapsed)


app_logger = AppLogger()


__all__ = ["AppLogger", "app_logger"]
