import os
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables from a .env file into the runtime environment
load_dotenv()


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, default))
    except ValueError:
        return default


def _env_float(name: str, default: float) -> float:
    try:
        return float(os.getenv(name, default))
    except ValueError:
        return default


@dataclass
class Config:
    """
    Central configuration for the ZF* workbench, read from environment
    variables (and a .env file, if present) when the module is imported.

    Attributes:
        Logging:
            - logger_name: Name of the logger every module logs through.
            - log_level: Console verbosity (DEBUG, INFO, WARNING, ...).
            - log_file: Optional rotating plain-text log file.
            - log_max_bytes: Log file size before rotation.
            - log_backup_count: Number of rotated backups to retain.
            - enable_structured_console: Console prints structured events as JSON.
            - structured_log_file: Optional JSON-lines file of structured events.

        Model Finder:
            - finder_max_size: Default largest domain size searched by `find`.
            - finder_workers: Worker processes used to check candidate structures.
            - finder_symmetry: Deduplicate isomorphic structures by default.

        Fock Numerics:
            - fock_epsilon: Allowed truncation deficit / normalization slack.
            - fock_eigen_tolerance: P(n) >= 1 - tolerance makes a number eigenstate.
            - fock_default_nmax: Truncation used when the CLI is given none.

        Axioms:
            - default_axioms: Axiom group or comma list imposed when none is given.
    """
    # Logging
    logger_name: str = os.getenv('LOGGER_NAME', 'ZFSTAR').upper()
    log_level: str = os.getenv('LOG_LEVEL', 'WARNING').upper()
    log_file: str | None = os.getenv('LOG_FILE') or None
    log_max_bytes: int = _env_int('LOG_MAX_BYTES', 10 * 1024 * 1024)
    log_backup_count: int = _env_int('LOG_BACKUP_COUNT', 3)
    enable_structured_console: bool = os.getenv('ENABLE_STRUCTURED_CONSOLE', 'false').lower() == 'true'
    structured_log_file: str | None = os.getenv('STRUCTURED_LOG_FILE') or None

    # Model finder
    finder_max_size: int = _env_int('FINDER_MAX_SIZE', 3)
    finder_workers: int = _env_int('FINDER_WORKERS', 1)
    finder_symmetry: bool = os.getenv('FINDER_SYMMETRY', 'false').lower() == 'true'

    # Fock numerics
    fock_epsilon: float = _env_float('FOCK_EPSILON', 1e-9)
    fock_eigen_tolerance: float = _env_float('FOCK_EIGEN_TOLERANCE', 1e-9)
    fock_default_nmax: int = _env_int('FOCK_DEFAULT_NMAX', 60)

    # Axiom selection
    default_axioms: str = os.getenv('DEFAULT_AXIOMS', 'pt')


VALID_LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def validate_configuration(cfg: Config) -> list[str]:
    """
    Validates the loaded configuration for correctness and consistency.

    This includes:
    - Checking the log level name.
    - Validating numeric ranges of environment-provided numbers.
    - Resolving the default axiom selection.
    - Ensuring log directories can be created.

    Args:
        cfg (Config): Parsed and populated configuration object.

    Returns:
        list[str]: A list of human-readable error strings. Empty list means validation passed.
    """
    errors: list[str] = []

    if cfg.log_level not in VALID_LOG_LEVELS:
        errors.append(f"LOG_LEVEL must be one of {', '.join(VALID_LOG_LEVELS)}, got '{cfg.log_level}'")

    # (min, max, min exclusive)
    numeric_ranges = {
        'LOG_MAX_BYTES': (1024, 1073741824, False),  # 1 KB to 1 GB
        'LOG_BACKUP_COUNT': (1, 100, False),
        'FINDER_MAX_SIZE': (1, 5, False),
        'FINDER_WORKERS': (1, 64, False),
        'FOCK_EPSILON': (0, 0.1, True),
        'FOCK_EIGEN_TOLERANCE': (0, 0.5, True),
        'FOCK_DEFAULT_NMAX': (1, 2000, False),
    }

    for var, (mn, mx, exclusive) in numeric_ranges.items():
        raw = os.getenv(var)
        if raw:
            try:
                val = float(raw)
                if val < mn or val > mx or (exclusive and val == mn):
                    low = f"({mn}" if exclusive else f"[{mn}"
                    errors.append(f"{var} must be in {low}, {mx}], got {val}")
            except ValueError:
                errors.append(f"{var} must be numeric, got '{raw}'")

    try:
        from .formula import FormulaError, resolve_axioms
    except ImportError:
        from formula import FormulaError, resolve_axioms
    try:
        if not resolve_axioms(cfg.default_axioms):
            errors.append("DEFAULT_AXIOMS selects no axioms")
    except FormulaError as e:
        errors.append(f"Invalid DEFAULT_AXIOMS: {e}")

    for path in (cfg.log_file, cfg.structured_log_file):
        log_dir = os.path.dirname(path) if path else ""
        if log_dir and not os.path.exists(log_dir):
            try:
                os.makedirs(log_dir, exist_ok=True)
            except Exception as e:
                errors.append(f"Cannot create log directory {log_dir}: {e}")

    return errors
