from __future__ import annotations

from pathlib import Path
from typing import Optional

from yacs.config import CfgNode as CN

import config

PROJECT_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG = Path(__file__).resolve().parents[1] / "config" / "phorma.yaml"


def _resolve(path: Optional[str]) -> Path:
    if not path:
        path = config.PHORMA_ENGINE_CONFIG
    p = Path(path).expanduser()
    if not p.is_absolute() and not p.exists():
        p = PROJECT_ROOT / p
    if not p.exists():
        p = DEFAULT_CONFIG
    return p


def load_engine_config(path: Optional[str] = None, **overrides) -> CN:
    """Load the engine yaml, apply env overrides from config.py, then kwargs.

    Keyword overrides use dotted-free section names, e.g.
    ``load_engine_config(budget=1000, workers=2, prune=False)``.
    """
    with open(_resolve(path)) as fcfg:
        cfg = CN.load_cfg(fcfg)

    if config.PHORMA_BRUTE_BUDGET:
        cfg.ORACLE.BUDGET = int(config.PHORMA_BRUTE_BUDGET)
    if config.PHORMA_WORKERS:
        cfg.ENGINE.WORKERS = int(config.PHORMA_WORKERS)
        cfg.ORACLE.WORKERS = int(config.PHORMA_WORKERS)
    if config.PHORMA_PRUNE:
        prune = config.PHORMA_PRUNE.strip().lower() not in ("0", "false", "no", "off")
        cfg.ENGINE.PRUNE_PARTIAL = prune
        cfg.ENGINE.PRUNE_ROOF = prune

    if overrides.get("budget") is not None:
        cfg.ORACLE.BUDGET = int(overrides["budget"])
    if overrides.get("workers") is not None:
        cfg.ENGINE.WORKERS = int(overrides["workers"])
        cfg.ORACLE.WORKERS = int(overrides["workers"])
    if overrides.get("prune") is not None:
        cfg.ENGINE.PRUNE_PARTIAL = bool(overrides["prune"])
        cfg.ENGINE.PRUNE_ROOF = bool(overrides["prune"])

    cfg.freeze()
    return cfg


def log_file_default() -> Optional[str]:
    return config.PHORMA_LOG_FILE or None
