import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# no -ffast-math: max norms must match the numpy fallback bit for bit
extensions = [
    Extension(
        "lie_euler._kernels",
        ["src/lie_euler/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
