#!/usr/bin/env python3
"""
Setup configuration for Residue Localizer
"""

from setuptools import setup, find_packages
import os

# Read README for long description
readme_path = os.path.join(os.path.dirname(__file__), 'README.md')
if os.path.exists(readme_path):
    with open(readme_path, 'r', encoding='utf-8') as f:
        long_description = f.read()
else:
    long_description = 'Exact residue localization for circle actions with fixed-point data'

setup(
    name="residue-localizer",
    version="1.0.0",
    description="Exact residue localization, Chern-number identities and chi_y rigidity checks",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    package_data={"residue_localizer": ["data/*.json"]},
    python_requires=">=3.9",
    install_requires=[
        "sympy>=1.12",
    ],
    extras_require={
        "formatting": [
            "tabulate>=0.9.0",
        ],
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "pytest-mock>=3.10.0",
            "hypothesis>=6.80.0",
            "black>=23.0.0",
            "flake8>=6.0.0",
            "mypy>=1.0.0",
        ],
        "all": [
            "tabulate>=0.9.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "residue-localizer=residue_localizer.cli:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
)
