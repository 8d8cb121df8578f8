import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QCX_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("qcx._ckernels", ["src/qcx/_ckernels.pyx"], include_dirs=[np.get_include()])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
