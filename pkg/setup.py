import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = [
        Extension(
            "rieszgauss._kernels",
            ["src/rieszgauss/_kernels.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            extra_compile_args=["-O3"],
            # Build failures fall back to the pure-numpy kernels at import.
            optional=True,
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    ext_modules = []

setup(ext_modules=ext_modules)
