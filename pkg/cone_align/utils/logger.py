"""
Logging utilities for the alignment pipeline.

This module provides logging configuration and utilities.
"""

import logging
import sys
from typing import Optional, Union


def setup_logger(
    name: str = "cone_align",
    level: Union[int, str] = logging.INFO,
    log_file: Optional[str] = None
) -> logging.Logger:
    """
    Set up a logger for the alignment pipeline.
    
    Library modules log through ``logging.getLogger(__name__)`` so configuring
    the ``cone_align`` logger here covers all of them.
    
    Args:
        name: Logger name
        level: Logging level (int or name such as 'DEBUG')
        log_file: Optional file to log to
        
    Returns:
        Configured logger
    """
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.INFO)

    logger = logging.getLogger(name)
    logger.setLevel(level)
    
    # Remove existing handlers
    for handler in list(logger.handlers):
        handler.close()
    logger.handlers = []
    
    # Do not propagate to the root logger. Importing generate_report.py runs
    # logging.basicConfig(), which would otherwise print every record twice.
    logger.propagate = False
    
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)
    
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    
    return logger
