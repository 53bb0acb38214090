"""
Logger Setup Script
File: utils/utils_logger.py

This script provides logging functions for the project.
Every module imports the configured `logger` from here.

Features:
- Logs information, warnings, and errors to a designated log file.
- Mirrors the same records to stderr (stdout is reserved for reports).
- Ensures the log directory exists.
- Sanitizes logs to remove personal/identifying information for GitHub sharing.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
import pathlib
import getpass
import sys
from typing import Mapping, Any

# Imports from external packages
from loguru import logger

# Imports from local modules
from utils.utils_config import get_log_file, get_log_level

#####################################
# Default Configurations
#####################################

# Get this file name without the extension
CURRENT_SCRIPT = pathlib.Path(__file__).stem

# Set the log file and the folder that holds it
LOG_FILE: pathlib.Path = get_log_file()
LOG_FOLDER: pathlib.Path = LOG_FILE.parent

LOG_LEVEL: str = get_log_level()

#####################################
# Helper Functions
#####################################


def sanitize_message(record: Mapping[str, Any]) -> str:
    """Remove personal/identifying information from log messages and escape braces."""
    message = record["message"]

    # Replace username with generic placeholder
    try:
        current_user = getpass.getuser()
        message = message.replace(current_user, "USER")
    except Exception:
        pass

    # Replace home directory paths
    try:
        home_path = str(pathlib.Path.home())
        message = message.replace(home_path, "~")
    except Exception:
        pass

    # Replace absolute paths with relative ones
    try:
        cwd = str(pathlib.Path.cwd())
        message = message.replace(cwd, "PROJECT_ROOT")
    except Exception:
        pass

    # Replace Windows backslashes with forward slashes for consistency
    message = message.replace("\\", "/")

    # Escape braces so loguru's formatter does not read polynomial sets as fields
    message = message.replace("{", "{{").replace("}", "}}")

    return message


def format_sanitized(record: Mapping[str, Any]) -> str:
    """Custom formatter that sanitizes messages and returns a plain string."""
    message = sanitize_message(record)
    time_str = record["time"].strftime("%Y-%m-%d %H:%M:%S")
    level_name = record["level"].name
    return f"{time_str} | {level_name} | {record['name']} | {message}\n"


def configure_logger(level: str = LOG_LEVEL) -> None:
    """(Re)install the file and stderr sinks at the given level."""
    logger.remove()
    try:
        LOG_FOLDER.mkdir(parents=True, exist_ok=True)
        logger.add(
            LOG_FILE,
            level=level,
            rotation="50 kB",  # Small files
            retention=1,  # Keep last rotated file
            compression=None,
            enqueue=True,  # safer across batch worker processes
            format=format_sanitized,
        )
    except Exception as e:
        sys.stderr.write(f"Error configuring file logging at {LOG_FILE}: {e}\n")
    logger.add(
        sys.stderr,
        level=level,
        enqueue=True,
        format=format_sanitized,
    )


def get_log_file_path() -> pathlib.Path:
    """Return the path to the log file."""
    return LOG_FILE


configure_logger()
logger.debug(f"Logging to file: {LOG_FILE} at level {LOG_LEVEL}")
