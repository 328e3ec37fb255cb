import sys
from .config import Config, validate_configuration
from .logging_setup import setup_logger
from .cli import EXIT_USAGE, run

def main(argv=None):

    cfg = Config()

    logger = setup_logger(
        name=cfg.logger_name,
        level=cfg.log_level,
        log_file=cfg.log_file,
        max_bytes=cfg.log_max_bytes,
        backup_count=cfg.log_backup_count,
        enable_structured_console=cfg.enable_structured_console,
        structured_log_file=cfg.structured_log_file
    )

    exit_code = 0
    try:
        errors = validate_configuration(cfg)
        if errors:
            for error in errors:
                logger.error(f"Configuration error: {error}")
                print(f"configuration error: {error}", file=sys.stderr)
            exit_code = EXIT_USAGE
        else:
            result = run(sys.argv[1:] if argv is None else argv, cfg=cfg)
            if result.text:
                print(result.text)
            if result.error:
                print(result.error, file=sys.stderr)
            exit_code = result.exit_code
    except KeyboardInterrupt:
        logger.info("Received keyboard interrupt, shutting down...")
        exit_code = 130
    except Exception as e:
        logger.critical(f"Fatal error: {e}", exc_info=True)
        exit_code = EXIT_USAGE
    finally:
        for h in logger.handlers:
            try:
                h.flush()
            except Exception:
                pass
        sys.exit(exit_code)

if __name__ == "__main__":
    main()
