"""Builds the `trilie_py` extension by delegating to cargo.

The extension lives in ../crates/py as an ordinary cdylib crate; this
shim compiles it in release mode and copies the artifact to wherever
setuptools wants the module, so `pip install -e . --no-build-isolation`
works without any Rust-specific build backend.
"""

import shutil
import subprocess
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CargoExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CargoBuildExt(build_ext):
    def build_extension(self, ext):
        workspace = Path(__file__).resolve().parent.parent
        subprocess.run(
            ["cargo", "build", "--release", "-p", "trilie-py"],
            cwd=workspace,
            check=True,
        )
        release = workspace / "target" / "release"
        built = next(
            p
            for p in (
                release / "libtrilie_py.so",
                release / "libtrilie_py.dylib",
                release / "trilie_py.dll",
            )
            if p.exists()
        )
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, target)


setup(
    ext_modules=[CargoExtension("trilie_py")],
    cmdclass={"build_ext": CargoBuildExt},
)
