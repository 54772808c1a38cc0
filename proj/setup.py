from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "repnet._core",
    sources=[
        "src/model.cpp",
        "src/estimation.cpp",
        "src/planner.cpp",
        "src/simulator.cpp",
        "src/scenario.cpp",
        "src/cli.cpp",
        "src/python/bindings.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
