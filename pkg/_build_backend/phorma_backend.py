"""In-tree build backend.

The repository's setup.py is an environment helper script (requirements,
verification, smoke compile), not a setuptools script. This backend wraps
setuptools' PEP 517 backend so packaging metadata comes from pyproject.toml
and the helper script is never executed during a build.
"""

from setuptools import build_meta as _orig
from setuptools.build_meta import *  # noqa: F401,F403


class _Backend(_orig._BuildMetaBackend):
    def run_setup(self, setup_script="setup.py"):
        # A missing script makes setuptools fall back to a bare setup() call.
        super().run_setup(setup_script="__pyproject_only__.py")


_backend = _Backend()
get_requires_for_build_wheel = _backend.get_requires_for_build_wheel
get_requires_for_build_sdist = _backend.get_requires_for_build_sdist
get_requires_for_build_editable = _backend.get_requires_for_build_editable
prepare_metadata_for_build_wheel = _backend.prepare_metadata_for_build_wheel
prepare_metadata_for_build_editable = _backend.prepare_metadata_for_build_editable
build_wheel = _backend.build_wheel
build_sdist = _backend.build_sdist
build_editable = _backend.build_editable
