from setuptools import setup, find_packages

setup(
    name="biamalg",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*", "benchmarking", "demo"]),
    install_requires=["numpy>=1.21"],
    extras_require={
        "test": ["pytest>=7", "hypothesis>=6"],
        "bench": ["psutil>=5.9"],
    },
    entry_points={"console_scripts": ["biamalg = biamalg.cli:main"]},
    author="BRAHMAI",
    author_email="open-source@brahmai.in",
    description="Bi-amalgamated algebras of finite commutative rings: construction, spectra and exhaustive theorem checks",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    url="https://github.com/cognition-brahmai/biamalg",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
)
