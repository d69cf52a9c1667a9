import logging
import sys
from typing import Optional


def init_logging(verbose: bool = False, log_file: Optional[str] = None) -> logging.Logger:
    log_root = logging.getLogger()
    for handler in list(log_root.handlers):
        if getattr(handler, "_phorma", False):
            log_root.removeHandler(handler)
    log_root.setLevel(logging.INFO if verbose else logging.WARNING)
    formatter = logging.Formatter("phorma: %(asctime)s-%(message)s")
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    for handler in handlers:
        handler.setFormatter(formatter)
        handler._phorma = True
        log_root.addHandler(handler)
    return log_root


def print_stage_progress(stage: int, total: int, label: str, enabled: bool = True) -> None:
    """One coarse progress line per compile stage, on stderr."""
    if not enabled:
        return
    bar_len = 30
    frac = max(0.0, min(1.0, float(stage) / float(total)))
    filled = int(bar_len * frac)
    bar = "#" * filled + "-" * (bar_len - filled)
    print(f"[{bar}] {frac * 100.0:5.1f}% - {label}", file=sys.stderr)
