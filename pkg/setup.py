# -*- coding: utf-8 -*-
try:
    from setuptools import setup, find_packages
except ImportError:
    raise ImportError(
        "Setuptools is needed to install all dependencies: https://pypi.python.org/pypi/setuptools"
    )


import os
import sys

name = "fluidprior"

description = "Quantum and classical generative priors for lattice Boltzmann flow snapshots."
long_description = """fluidprior learns compact generative priors for two dimensional fluid flow.

A D2Q9 lattice Boltzmann solver simulates channel flow past a cylinder and
records vorticity snapshots of the von Karman vortex street. A vector-quantized
variational autoencoder compresses every snapshot into a short latent vector,
and three generative models are trained on the encoded dataset: a factorized
quantum circuit Born machine, a hybrid quantum generative adversarial network
and a classical LSTM. Samples from each model are compared against the encoded
dataset with nearest-neighbor distances, histograms, PCA and t-SNE.

The quantum circuits run on a built-in state vector simulator and the neural
networks on a small reverse-mode automatic differentiation library, so the
study only needs numpy and scipy for its numerics. Every stage is
deterministic given a master seed and can be re-run on its own.
"""


fluidprior_require = [
    "tqdm",
    "h5py",
    "multiprocess",
    "numpy>=1.20",
    "scipy>=1.4.1",
    "seaborn",
    "matplotlib>=3",
    "ruamel.yaml",
    "click",
]


exdir_backend = ["exdir"]

all_fluidprior_requires = fluidprior_require + exdir_backend

test_dependencies = ["coverage"]
tests_require = all_fluidprior_requires + test_dependencies

docs_dependencies = ["sphinx", "sphinx_rtd_theme"]
docs_require = all_fluidprior_requires + docs_dependencies

all_requires = docs_require + test_dependencies

extras_require = {
    "exdir": exdir_backend,
    "all": all_fluidprior_requires,
    "docs": docs_require,
    "all_extras": all_requires,
    "tests": tests_require,
}

# To install on read the docs
if os.environ.get("READTHEDOCS") == "True":
    fluidprior_require = []


help_text = """
Custom options:
  --all_extras        Install with all dependencies, along with extra dependencies.
  --all               Install with all dependencies required by fluidprior
  --tests             Install with dependencies required to run tests
  --docs              Install with dependencies required to build the docs
    """

if "--help" in sys.argv or "-h" in sys.argv:
    print(help_text)


if "--all_extras" in sys.argv:
    fluidprior_require = all_requires
    sys.argv.remove("--all_extras")


if "--all" in sys.argv:
    fluidprior_require = all_fluidprior_requires
    sys.argv.remove("--all")

if "--tests" in sys.argv:
    fluidprior_require = tests_require
    sys.argv.remove("--tests")


# Get version
exec(open(os.path.join("src", "fluidprior", "_version.py")).read())

setup(
    name=name,
    version=__version__,
    description=description,
    license="GNU GPLv3",
    keywords="lattice boltzmann vq-vae quantum circuit born machine qgan lstm generative prior",
    long_description=long_description,
    python_requires=">=3.7",
    packages=find_packages("src"),
    package_dir={"": "src"},
    install_requires=fluidprior_require,
    extras_require=extras_require,
    entry_points={
        "console_scripts": ["fluidprior=fluidprior.pipeline.cli:main"],
    },
)
