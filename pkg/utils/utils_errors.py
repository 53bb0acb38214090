"""
utils_errors.py - base exception types shared across the project.

Every error a user can trigger from the command line derives from
SpogcheckError. The exit code travels with the exception class so the
CLI can map failures to the stable contract:

- 2: usage and parse errors (bad grammar, wrong derivation count)
- 3: contract violations (invalid arrangement, non-logarithmic input,
     a minor not divisible by Q, ...)
"""

#####################################
# Exit Codes
#####################################

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CONTRACT = 3


#####################################
# Base Exceptions
#####################################


class SpogcheckError(Exception):
    """Base class for all project errors."""

    exit_code: int = EXIT_CONTRACT


class UsageError(SpogcheckError, ValueError):
    """Malformed input: syntax errors, wrong counts, unreadable files."""

    exit_code = EXIT_USAGE


class ContractViolation(SpogcheckError, ValueError):
    """Input parsed fine but violates a mathematical precondition."""

    exit_code = EXIT_CONTRACT
