"""Builds the C++ extension through CMake and drops it into the dimerfl
package (the scikit-build bridge is not assumed to be available)."""
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
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent

        cfg = "Debug" if self.debug else "Release"
        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                f"-DCMAKE_BUILD_TYPE={cfg}",
                "-DDIMERFL_BUILD_PYTHON=ON",
                "-DDIMERFL_BUILD_TESTS=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("dimerfl._core")],
    cmdclass={"build_ext": CMakeBuild},
)
