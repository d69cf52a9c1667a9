from __future__ import annotations

import os
from dotenv import load_dotenv

load_dotenv()

# --- Engine config ---
# Yaml settings for compile/oracle/image; see src/config/phorma.yaml.
PHORMA_ENGINE_CONFIG: str = os.getenv("PHORMA_ENGINE_CONFIG", os.path.join("src", "config", "phorma.yaml"))

# --- Overrides applied on top of the yaml (empty = keep yaml value) ---
# Largest candidate space (product of bounds) the oracle will scan.
PHORMA_BRUTE_BUDGET: str = os.getenv("PHORMA_BRUTE_BUDGET", "")
# joblib workers for redgen and the oracle; 1 runs in-process.
PHORMA_WORKERS: str = os.getenv("PHORMA_WORKERS", "")
# 0 disables the partial-evaluation and roof pruning layers in redgen.
PHORMA_PRUNE: str = os.getenv("PHORMA_PRUNE", "")

# --- Output ---
PHORMA_LOG_FILE: str = os.getenv("PHORMA_LOG_FILE", "")
