"""CMake-driven build of the pybind11 extension.

The compiled module lands inside the `uscrelax` package so that both regular
and editable installs pick it up.
"""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_path.parent.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DUSCRELAX_BUILD_PYTHON=ON",
                "-DUSCRELAX_BUILD_TESTS=OFF",
                f"-DPYTHON_EXECUTABLE={sys.executable}",
                f"-DUSCRELAX_EXT_OUTPUT_DIR={ext_path.parent}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("uscrelax._core")],
    cmdclass={"build_ext": CMakeBuild},
)
