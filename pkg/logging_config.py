# logging_config.py
"""
Centralized logging configuration for solver, verifier and report logs
"""

import logging
import os
import re
import sys
from typing import Dict, Optional

from constants import LoggingDefaults

_ID_LIST_PATTERN = re.compile(r'[\[(](\s*-?\d+\s*(?:,\s*-?\d+\s*){8,})[\])]')


def abbreviate_id_lists(text: str, keep: int = LoggingDefaults.ABBREVIATE_KEEP) -> str:
    """
    Shorten long bracketed integer lists (vertex ids, column profiles) so that
    large certificates do not flood log files.

    "[0, 4, 8, 12, 16, 20, 24, 28, 32, 36]" becomes "[0, 4, 8, 12, 16, 20, 24, 28, … (+2 more)]"
    """
    if not isinstance(text, str):
        text = str(text)

    def _shorten(match: re.Match) -> str:
        opening = match.group(0)[0]
        closing = match.group(0)[-1]
        items = [item.strip() for item in match.group(1).split(',')]
        if len(items) <= keep:
            return match.group(0)
        head = ", ".join(items[:keep])
        return f"{opening}{head}, … (+{len(items) - keep} more){closing}"

    return _ID_LIST_PATTERN.sub(_shorten, text)


class AbbreviatingFormatter(logging.Formatter):
    """Formatter that abbreviates long id lists after standard formatting"""

    def __init__(self, fmt=None, datefmt=None, keep: int = LoggingDefaults.ABBREVIATE_KEEP):
        super().__init__(fmt, datefmt)
        self.keep = keep

    def format(self, record):
        formatted = super().format(record)
        return abbreviate_id_lists(formatted, self.keep)


class DomLabLoggers:
    """Centralized logging configuration for the toolkit's module loggers"""

    LOGGER_FILES: Dict[str, str] = {
        'GraphCore':      'graph_core.log',
        'Verifiers':      'verifiers.log',
        'Solvers':        'solvers.log',
        'ClosedForms':    'closed_forms.log',
        'Constructions':  'constructions.log',
        'Erratum':        'erratum.log',
        'GridTables':     'tables.log',
        'DomLabCLI':      'cli.log',
    }

    def __init__(self, log_directory: str = "logs", level: int = logging.INFO):
        self.log_dir = log_directory
        self.level = level
        os.makedirs(log_directory, exist_ok=True)
        self._setup_loggers()

    def _setup_loggers(self):
        """Attach one file handler per module logger"""
        formatter = AbbreviatingFormatter(LoggingDefaults.FORMAT, datefmt=LoggingDefaults.DATE_FORMAT)

        for logger_name, filename in self.LOGGER_FILES.items():
            logger = logging.getLogger(logger_name)
            logger.setLevel(self.level)

            # Clear file handlers from a previous setup to avoid duplicates
            for handler in list(logger.handlers):
                if isinstance(handler, logging.FileHandler):
                    logger.removeHandler(handler)
                    handler.close()

            handler = logging.FileHandler(
                os.path.join(self.log_dir, filename),
                mode='a',
                encoding='utf-8'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

    def log_file(self, logger_name: str) -> str:
        return os.path.join(self.log_dir, self.LOGGER_FILES[logger_name])

    def close(self):
        """Detach and close all file handlers installed by this instance"""
        for logger_name in self.LOGGER_FILES:
            logger = logging.getLogger(logger_name)
            for handler in list(logger.handlers):
                if isinstance(handler, logging.FileHandler):
                    logger.removeHandler(handler)
                    handler.close()


_active_loggers: Optional[DomLabLoggers] = None


def setup_logging(level: str = LoggingDefaults.LEVEL, log_directory: Optional[str] = None,
                  console: bool = True) -> Optional[DomLabLoggers]:
    """
    Configure console and optional file logging for a run.

    Console output goes to stderr so that stdout stays byte-deterministic.
    File logging is enabled only when a directory is given.
    """
    global _active_loggers

    numeric_level = getattr(logging, str(level).upper(), logging.WARNING)
    root = logging.getLogger()
    root.setLevel(numeric_level)

    if console:
        for handler in list(root.handlers):
            if getattr(handler, '_domlab_console', False):
                root.removeHandler(handler)
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(AbbreviatingFormatter('%(levelname)s - %(name)s - %(message)s'))
        console_handler.setLevel(numeric_level)
        console_handler._domlab_console = True
        root.addHandler(console_handler)

    if _active_loggers is not None:
        _active_loggers.close()
        _active_loggers = None

    if log_directory:
        _active_loggers = DomLabLoggers(log_directory, level=min(numeric_level, logging.INFO))
    return _active_loggers


def log_run_start(command: str):
    """Log start of a run across the relevant loggers"""
    for logger_name in ('Solvers', 'GridTables', 'DomLabCLI'):
        logging.getLogger(logger_name).info(f"=== Run Start: {command} ===")


def log_run_end(command: str, status: int):
    """Log end of a run across the relevant loggers"""
    for logger_name in ('Solvers', 'GridTables', 'DomLabCLI'):
        logging.getLogger(logger_name).info(f"=== Run End: {command} (exit {status}) ===")


if __name__ == "__main__":
    print("Testing module logging setup...")
    loggers = setup_logging("INFO", log_directory="logs")
    logging.getLogger("Solvers").info("k=4 certificate=[0, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40]")
    logging.getLogger("GridTables").warning("DISCREPANCY path-clique sdom n=3 m=4: formula 5, solver 4")
    print(f"✓ Log files created in: {loggers.log_dir}/")
