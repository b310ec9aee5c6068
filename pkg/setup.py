from setuptools import setup, find_packages

setup(
    name="plucker-lce-toolkit",
    version="1.0.0",
    description="Pluecker-coordinate invariants and algebraic models for the linear code equivalence problem",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "sympy>=1.14",
        "pyyaml>=6.0",
        "click>=8.0.0",
        "rich>=13.0.0",
        "python-dotenv>=1.0.0",
        "pydantic>=2.0.0",
    ],
    extras_require={
        'dev': [
            "pytest>=7.0.0",
        ],
    },
    entry_points={
        'console_scripts': [
            'plucker-lce=src.main:cli',
        ],
    },
    python_requires=">=3.8",
)
