import logging
import sys
from copy import copy
from typing import Literal

import click

# Width of "CRITICAL:" so messages line up.
LEVEL_PREFIX_WIDTH = 9

LEVEL_COLOURS = {
    logging.DEBUG: "cyan",
    logging.INFO: "green",
    logging.WARNING: "yellow",
    logging.ERROR: "red",
    logging.CRITICAL: "bright_red",
}


def get_formatted_logger(level: str | int = logging.INFO):
    """Return the package logger with a coloured stderr handler."""
    logger = logging.getLogger("sparsecut")
    logger.setLevel(level)

    # Reconfiguring only changes the level.
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(ConsoleFormatter(
            "%(levelprefix)s [%(asctime)s] %(stageprefix)s%(message)s",
            datefmt="%H:%M:%S"
        ))
        logger.addHandler(handler)

    logger.propagate = False

    return logger


class ConsoleFormatter(logging.Formatter):
    """
    Console formatter for pipeline logs.

    * ``%(levelprefix)s`` is the level name padded to a fixed width, coloured by level.
    * ``%(stageprefix)s`` is ``[stage] `` for records logged with ``extra={"stage": ...}``
      and empty otherwise.
    """

    def __init__(
        self,
        fmt: str | None = None,
        datefmt: str | None = None,
        style: Literal["%", "{", "$"] = "%",
        use_colors: bool | None = None,
    ):
        self.use_colors = sys.stderr.isatty() if use_colors is None else use_colors
        super().__init__(fmt=fmt, datefmt=datefmt, style=style)

    def style_level(self, level_name: str, level_no: int) -> str:
        colour = LEVEL_COLOURS.get(level_no)
        if not self.use_colors or colour is None:
            return level_name
        return click.style(level_name, fg=colour)

    def style_stage(self, stage: str | None) -> str:
        if not stage:
            return ""
        label = f"[{stage}]"
        if self.use_colors:
            label = click.style(label, fg="magenta", bold=True)
        return label + " "

    def formatMessage(self, record: logging.LogRecord) -> str:
        recordcopy = copy(record)
        padding = " " * max(LEVEL_PREFIX_WIDTH - len(recordcopy.levelname) - 1, 1)
        recordcopy.__dict__["levelprefix"] = self.style_level(recordcopy.levelname, recordcopy.levelno) + ":" + padding
        recordcopy.__dict__["stageprefix"] = self.style_stage(getattr(recordcopy, "stage", None))
        return super().formatMessage(recordcopy)
