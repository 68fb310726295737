"""
Configuration and logging management for the cone metric toolkit.

config.json lives next to main.py. Keys starting with "_" are comments and
are carried through untouched.
"""

import os
import sys
import json
import logging

# Version
SCRIPT_VERSION = "1.0.0 - Cone Metric Toolkit"

# File paths
APP_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_FILE = os.path.join(APP_DIR, "config.json")

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"
CONSOLE_FORMAT = "%(levelname)s | %(message)s"

DEFAULT_CONFIG = {
    "_OUTPUT_SETTINGS": "Number formatting for density, distance and grid output (1-17 significant digits).",
    "OUTPUT_DIGITS": 15,
    "_GRID_SETTINGS": "Grid export defaults: csv or json. GRID_WORKERS > 1 evaluates nodes in worker processes.",
    "GRID_FORMAT": "csv",
    "GRID_WORKERS": 1,
    "_VERIFY_SETTINGS": "Self-check defaults: level is quick or full; seed fixes the random samples.",
    "VERIFY_LEVEL": "quick",
    "VERIFY_SEED": 20240607,
    "_LOG_SETTINGS": "An empty LOG_FILE logs to the console only. VERBOSE adds debug output.",
    "LOG_FILE": "",
    "VERBOSE": False
}


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


SETTING_CHECKS = {
    "OUTPUT_DIGITS": lambda v: _is_int(v) and 1 <= v <= 17,
    "GRID_FORMAT": lambda v: v in ("csv", "json"),
    "GRID_WORKERS": lambda v: _is_int(v) and v >= 1,
    "VERIFY_LEVEL": lambda v: v in ("quick", "full"),
    "VERIFY_SEED": lambda v: _is_int(v) and v >= 0,
    "LOG_FILE": lambda v: isinstance(v, str),
    "VERBOSE": lambda v: isinstance(v, bool),
}


def _merge_with_defaults(loaded: dict) -> dict:
    """Defaults overlaid with the loaded values; invalid values are dropped with a warning."""
    merged = dict(DEFAULT_CONFIG)
    for key, value in loaded.items():
        check = SETTING_CHECKS.get(key)
        if check is not None and not check(value):
            logging.warning(f"Ignoring invalid {key}={value!r} in config.json, using {DEFAULT_CONFIG[key]!r}")
            continue
        merged[key] = value
    return merged


def load_config():
    """
    Load configuration from config.json, creating it with defaults if missing.

    Never raises: parse and I/O failures are logged and the defaults returned.
    """
    if not os.path.exists(CONFIG_FILE):
        save_config(DEFAULT_CONFIG)
        return dict(DEFAULT_CONFIG)

    try:
        with open(CONFIG_FILE, "r", encoding="utf-8") as f:
            loaded = json.load(f)
    except json.JSONDecodeError as e:
        logging.error(f"Failed to parse config.json: {e}. Using defaults.")
        return dict(DEFAULT_CONFIG)
    except IOError as e:
        logging.error(f"Failed to read config.json: {e}. Using defaults.")
        return dict(DEFAULT_CONFIG)
    except Exception as e:
        logging.error(f"Unexpected error loading config: {e}. Using defaults.")
        return dict(DEFAULT_CONFIG)

    if not isinstance(loaded, dict):
        logging.error("config.json must contain a JSON object. Using defaults.")
        return dict(DEFAULT_CONFIG)
    return _merge_with_defaults(loaded)


def save_config(config):
    """Save configuration to config.json."""
    try:
        with open(CONFIG_FILE, "w", encoding="utf-8") as f:
            json.dump(config, f, indent=4)
    except IOError as e:
        logging.error(f"Failed to write config.json: {e}")
    except Exception as e:
        logging.error(f"Unexpected error saving config: {e}")


def setup_logging(log_path: str = "", level: int = logging.INFO):
    """
    Configure logging to an optional file and the console.

    Command results go to stdout, so the console handler writes to stderr.

    Args:
        log_path: Path to log file; empty for console-only logging
        level: Console logging level (typically INFO, DEBUG when verbose)
    """
    try:
        for h in logging.root.handlers[:]:
            logging.root.removeHandler(h)

        if log_path:
            file_handler = logging.FileHandler(log_path, encoding="utf-8")
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            logging.root.addHandler(file_handler)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        logging.root.addHandler(console_handler)

        logging.root.setLevel(logging.DEBUG if log_path else level)

        install_global_exception_logging()
    except Exception as e:
        print(f"Failed to setup logging: {e}", file=sys.stderr)
        raise


def install_global_exception_logging():
    """Log all unhandled exceptions before the default hook prints them."""
    def _log_excepthook(exctype, value, tb):
        logging.critical(
            "Unhandled exception",
            exc_info=(exctype, value, tb)
        )
        sys.__excepthook__(exctype, value, tb)

    sys.excepthook = _log_excepthook


def log_and_status(status_fn, msg: str, level: str = "info", ui_msg: str = None):
    """
    Log a message, then forward a short version to a status callback.

    Args:
        status_fn: Callback for progress lines (None to skip)
        msg: Detailed message for the log
        level: Log level - "info", "warning", or "error"
        ui_msg: Optional shorter message for the callback
    """
    if ui_msg is None:
        ui_msg = msg

    if level == "error":
        logging.error(msg)
    elif level == "warning":
        logging.warning(msg)
    else:
        logging.info(msg)

    if status_fn is not None:
        try:
            status_fn(ui_msg)
        except Exception as e:
            logging.warning(f"status_fn raised while logging message: {e}", exc_info=True)
            print(f"[STATUS] {ui_msg}", file=sys.stderr)
