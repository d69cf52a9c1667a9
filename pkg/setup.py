#!/usr/bin/env python3
"""phorma environment/setup helper

- Installs Python requirements
- Verifies that the engine config and shipped spec files are present
- Optionally compiles the shipped specs into index images as a smoke check

Usage:
  python setup.py              # full setup (requirements + verify + smoke)
  python setup.py --requirements-only
  python setup.py --verify
  python setup.py --smoke
"""

import subprocess
import sys
from pathlib import Path
from typing import Optional


class PhormaSetup:
    def __init__(self) -> None:
        self.project_root = Path(__file__).resolve().parent
        self.config_file = self.project_root / "src" / "config" / "phorma.yaml"
        self.specs_dir = self.project_root / "specs"
        self.results_dir = self.project_root / "results"

    # --- helpers ---------------------------------------------------------

    def print_header(self, title: str) -> None:
        bar = "=" * 60
        print(f"\n{bar}\n{title}\n{bar}")

    def run_command(self, cmd: str, description: Optional[str] = None) -> bool:
        if description:
            print(f"{description}...")
        try:
            result = subprocess.run(
                cmd,
                shell=True,
                cwd=str(self.project_root),
                capture_output=True,
                text=True,
            )
            if result.stdout:
                print(result.stdout.strip())
            if result.returncode != 0:
                print(f"Command failed: {cmd}")
                if result.stderr:
                    print(result.stderr.strip())
                return False
            return True
        except Exception as exc:  # pragma: no cover - best effort helper
            print(f"Error running command '{cmd}': {exc}")
            return False

    # --- steps -----------------------------------------------------------

    def check_python_version(self) -> bool:
        v = sys.version_info
        print(f"Python version: {v.major}.{v.minor}.{v.micro}")
        if v.major != 3 or v.minor < 8:
            print("phorma requires Python 3.8+.")
            return False
        return True

    def install_requirements(self) -> bool:
        self.print_header("Installing Python requirements")
        req_file = self.project_root / "requirements.txt"
        if not req_file.exists():
            print(f"requirements.txt not found at {req_file}")
            return False
        ok = self.run_command(f'"{sys.executable}" -m pip install -r requirements.txt', "Installing requirements")
        if ok:
            print("Requirements installed successfully.")
        return ok

    def verify_setup(self) -> bool:
        self.print_header("Verifying phorma setup")
        required = [
            ("requirements.txt", self.project_root / "requirements.txt"),
            ("engine config", self.config_file),
            ("specs directory", self.specs_dir),
        ] + [(p.name, p) for p in (self.specs_dir / n for n in ("L_75.phorma", "Tz_15_17_19.phorma", "sym_ge_3.phorma"))]

        ok = True
        for name, path in required:
            if path.exists():
                print(f"OK      {name}: {path}")
            else:
                print(f"MISSING {name}: {path}")
                ok = False
        return ok

    def smoke(self) -> bool:
        self.print_header("Compiling the shipped specs")
        self.results_dir.mkdir(parents=True, exist_ok=True)
        ok = True
        for spec in sorted(self.specs_dir.glob("*.phorma")):
            out = self.results_dir / (spec.stem + ".phx")
            if not self.run_command(f'"{sys.executable}" -m src.cli compile "{spec}" -o "{out}"', f"Compiling {spec.name}"):
                ok = False
        return ok

    def run_complete_setup(self) -> bool:
        print("phorma COMPLETE SETUP")
        print("=" * 60)
        if not self.check_python_version():
            return False
        if not self.install_requirements():
            print("Failed to install Python requirements.")
            return False
        all_good = self.verify_setup() and self.smoke()
        self.print_header("Setup summary")
        if all_good:
            print("phorma setup looks good. Try: python -m src.cli stats --builtin L:7:5 --table")
        else:
            print("Setup is partial. See messages above.")
        return all_good


def main() -> None:
    setup = PhormaSetup()

    if len(sys.argv) > 1:
        arg = sys.argv[1]
        if arg == "--requirements-only":
            setup.install_requirements()
        elif arg == "--verify":
            setup.verify_setup()
        elif arg == "--smoke":
            setup.smoke()
        else:
            print("Usage: python setup.py [--requirements-only|--verify|--smoke]")
    else:
        setup.run_complete_setup()


if __name__ == "__main__":
    main()
