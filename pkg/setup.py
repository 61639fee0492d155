from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

requirements = [
    "numpy>=1.22.0",
    "pandas>=1.5.0",
    "PyYAML>=5.4.0",
    "sympy>=1.10",
]

setup(
    name="noisy-sumsets",
    version="0.1.0",
    author="Noisy Sumsets Team",
    description="Exact noisy sum-free computations over Z/nZ: oracle, closed-form bounds and sweeps",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        "dev": [
            "pytest>=6.0",
            "black>=21.0",
            "flake8>=3.8",
            "bandit>=1.7",
        ],
    },
    entry_points={
        "console_scripts": [
            "noisy-sumsets=noisy_sumsets.cli:main",
        ],
    },
)
