"""
Logging configuration for the Bresse stability laboratory
Console logging always; dated log files when BRESSE_LOG_DIR points somewhere writable
"""
import logging
import os
from datetime import datetime

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = None):
    """Setup logging configuration - console plus optional log files"""
    level_name = (level or os.getenv("BRESSE_LOG_LEVEL") or "WARNING").upper()
    numeric_level = getattr(logging, level_name, logging.WARNING)

    logs_dir = os.getenv("BRESSE_LOG_DIR")
    write_files = bool(logs_dir) and (
        os.path.isdir(logs_dir) or os.access(os.path.dirname(os.path.abspath(logs_dir)), os.W_OK)
    )

    detailed_formatter = logging.Formatter(FORMAT)

    # console handler writes to stderr
    handlers = [logging.StreamHandler()]
    logging.basicConfig(level=numeric_level, format=FORMAT, handlers=handlers, force=True)

    lab_logger = logging.getLogger('lab')
    lab_logger.setLevel(numeric_level)

    numerics_logger = logging.getLogger('numerics')
    numerics_logger.setLevel(numeric_level)

    if write_files:
        os.makedirs(logs_dir, exist_ok=True)
        today = datetime.now().strftime("%Y-%m-%d")

        lab_handler = logging.FileHandler(os.path.join(logs_dir, f"lab_{today}.log"))
        lab_handler.setFormatter(detailed_formatter)
        lab_logger.addHandler(lab_handler)

        numerics_handler = logging.FileHandler(os.path.join(logs_dir, f"numerics_{today}.log"))
        numerics_handler.setFormatter(detailed_formatter)
        numerics_logger.addHandler(numerics_handler)

    return lab_logger, numerics_logger
