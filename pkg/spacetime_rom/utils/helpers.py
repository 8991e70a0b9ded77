"""
General helper utilities for the space-time reduced order modelling package.
"""

from typing import List


def create_progress_bar(current: int, total: int, width: int = 30) -> str:
    """
    Create a text-based progress bar.

    Args:
        current: Current progress (1-based)
        total: Total items
        width: Width of the progress bar

    Returns:
        Progress bar string
    """
    if total == 0:
        return "[" + " " * width + "]"

    percentage = min(current / total, 1.0)
    filled = int(width * percentage)
    bar = "█" * filled + "░" * (width - filled)
    return f"[{bar}]"


def parse_int_list(text: str) -> List[int]:
    """
    Parse "2,4,6" or "2-10" or "2-10:2" into a sorted list of unique ints.

    Raises:
        ValueError: On malformed input
    """
    values = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            span, _, step = part.partition(":")
            low, _, high = span.partition("-")
            start, stop = int(low), int(high)
            if stop < start:
                raise ValueError(f"Empty range '{part}'")
            values.update(range(start, stop + 1, int(step) if step else 1))
        else:
            values.add(int(part))
    if not values:
        raise ValueError(f"No integers in '{text}'")
    return sorted(values)


def format_duration(seconds: float) -> str:
    """Human-readable duration, e.g. '2m 05.3s'."""
    minutes, rest = divmod(max(seconds, 0.0), 60.0)
    if minutes >= 1:
        return f"{int(minutes)}m {rest:04.1f}s"
    return f"{rest:.2f}s"
