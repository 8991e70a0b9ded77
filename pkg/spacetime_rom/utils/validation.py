"""
Validation utilities for paths used by the command-line workflows.
"""

import os
from pathlib import Path
from typing import Optional, Tuple

from ..constants import MANIFEST_FILENAME


def is_output_dir_writable(path_str: str) -> Tuple[bool, Optional[str]]:
    """Check that a directory exists and is writable, or can be created under a writable parent."""
    try:
        path = Path(path_str)
        if path.exists():
            if not path.is_dir():
                return False, f"Output path is not a directory: {path}"
            if not os.access(path, os.W_OK):
                return False, f"No write permission for directory: {path}"
            return True, None
        parent = path.parent if path.parent != Path("") else Path(".")
        while not parent.exists() and parent != parent.parent:
            parent = parent.parent
        if not os.access(parent, os.W_OK):
            return False, f"No write permission for directory: {parent}"
        return True, None
    except Exception as e:
        return False, f"Unable to validate output path '{path_str}': {e}"


def has_offline_artifacts(path_str: str) -> Tuple[bool, Optional[str]]:
    """Check that a directory holds an offline run manifest."""
    path = Path(path_str)
    if not path.is_dir():
        return False, f"Model directory does not exist: {path}"
    if not (path / MANIFEST_FILENAME).is_file():
        return False, f"No {MANIFEST_FILENAME} in {path}; run the offline command first"
    return True, None
