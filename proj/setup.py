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
        import pybind11

        source_dir = Path(__file__).parent.resolve()
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_dir = ext_path.parent
        ext_dir.mkdir(parents=True, exist_ok=True)
        build_temp = Path(self.build_temp).resolve()
        build_temp.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={ext_dir}",
            "-DCMAKE_BUILD_TYPE=Release",
            "-DKCNF_PYTHON_ONLY=ON",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
        ]
        subprocess.run(["cmake", "-S", str(source_dir), "-B", str(build_temp)] + cmake_args, check=True)
        subprocess.run(["cmake", "--build", str(build_temp), "--target", "_core", "--parallel"], check=True)


setup(
    ext_modules=[CMakeExtension("kcnfsampler._core")],
    cmdclass={"build_ext": CMakeBuild},
)
