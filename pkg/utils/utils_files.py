"""
utils_files.py - read arrangement, derivation and certificate files.

Failures are logged and raised as UsageError (exit code 2) so the CLI
reports them uniformly.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
import pathlib
from typing import Union

# Imports from local modules
from arrangements.arrangement import Arrangement, parse_arrangement
from arrangements.derivation import Derivation, parse_derivations
from utils.utils_errors import UsageError
from utils.utils_logger import logger

PathLike = Union[str, pathlib.Path]

ARRANGEMENT_SUFFIX = ".arr"
DERIVATION_SUFFIX = ".der"

#####################################
# Reading Files
#####################################


def read_text(path: PathLike, what: str = "input") -> str:
    """Read a UTF-8 text file or raise UsageError."""
    path = pathlib.Path(path)
    try:
        logger.debug(f"Opening {what} file: {path}")
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        logger.error(f"{what.capitalize()} file not found: {path}")
        raise UsageError(f"{what} file not found: {path}")
    except (OSError, UnicodeDecodeError) as e:
        logger.error(f"Cannot read {what} file {path}: {e}")
        raise UsageError(f"cannot read {what} file {path}: {e}")


def load_arrangement(path: PathLike) -> Arrangement:
    arrangement = parse_arrangement(read_text(path, "arrangement"))
    logger.info(f"Loaded arrangement from {path}: ℓ = {arrangement.nvars}, |A| = {arrangement.size}")
    return arrangement


def load_derivations(path: PathLike, nvars: int) -> list[Derivation]:
    derivations = parse_derivations(read_text(path, "derivation"), nvars)
    logger.info(f"Loaded {len(derivations)} derivations from {path}")
    return derivations


def sibling_derivation_file(arrangement_path: PathLike) -> pathlib.Path:
    """data/foo.arr -> data/foo.der"""
    return pathlib.Path(arrangement_path).with_suffix(DERIVATION_SUFFIX)


def arrangement_files(folder: PathLike) -> list[pathlib.Path]:
    folder = pathlib.Path(folder)
    files = sorted(folder.glob(f"*{ARRANGEMENT_SUFFIX}"))
    if not files:
        raise UsageError(f"no {ARRANGEMENT_SUFFIX} files in {folder}")
    return files
