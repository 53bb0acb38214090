"""
utils_config.py - configuration getters backed by an optional .env file.

Each setting has one getter that reads the environment (after
load_dotenv) and falls back to a default. Command-line flags always win
over these values; nothing mathematical depends on them.

Keys (see .env.example):
    SPOGCHECK_LOG_LEVEL       loguru level for both sinks (default INFO)
    SPOGCHECK_LOG_FILE        log file path (default logs/project_log.log)
    SPOGCHECK_JOBS            default worker count for batch mode (default 1)
    SPOGCHECK_OUTPUT_FORMAT   default report format, text or json (default text)
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
import os
import pathlib

# Imports from external packages
from dotenv import load_dotenv

#####################################
# Load Environment Variables
#####################################

load_dotenv()

#####################################
# Default Configurations
#####################################

DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_LOG_FILE = pathlib.Path("logs").joinpath("project_log.log")
DEFAULT_JOBS = 1
DEFAULT_OUTPUT_FORMAT = "text"
OUTPUT_FORMATS = ("text", "json")

#####################################
# Getter Functions for .env Variables
#####################################

# The logger imports this module, so these getters cannot log themselves.


def get_log_level() -> str:
    """Fetch the log level from environment or use default."""
    return os.getenv("SPOGCHECK_LOG_LEVEL", DEFAULT_LOG_LEVEL).strip().upper()


def get_log_file() -> pathlib.Path:
    """Fetch the log file path from environment or use default."""
    raw = os.getenv("SPOGCHECK_LOG_FILE")
    return pathlib.Path(raw) if raw else DEFAULT_LOG_FILE


def get_default_jobs() -> int:
    """Fetch the default batch worker count from environment or use default."""
    try:
        jobs = int(os.getenv("SPOGCHECK_JOBS", DEFAULT_JOBS))
    except ValueError:
        return DEFAULT_JOBS
    return max(jobs, 1)


def get_default_output_format() -> str:
    """Fetch the default report format from environment or use default."""
    fmt = os.getenv("SPOGCHECK_OUTPUT_FORMAT", DEFAULT_OUTPUT_FORMAT).strip().lower()
    return fmt if fmt in OUTPUT_FORMATS else DEFAULT_OUTPUT_FORMAT
