import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

REQUIRED_PACKAGES = [
    'numpy>=1.16', 'scipy>=1.4', 'click>=7.0', 'pandas>=1.5'
]

setuptools.setup(
    name="aimkg",
    version="0.1.0",
    description="Klein-Gordon bound states in the Makarov potential by the asymptotic iteration method, "
                "with exact rational arithmetic and finite-difference cross-checks.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(
        exclude=["tests", "tests.models"]),
    package_data={"aimkg": ["schemas/*.schema.json"]},
    python_requires=">=3.6",
    install_requires=REQUIRED_PACKAGES,
    extras_require={
        "test": ["pytest", "jsonschema"],
        "docs": ["sphinx", "sphinx_rtd_theme", "recommonmark"],
    },
    entry_points={
        "console_scripts": ["aimkg=aimkg.cli:main"],
    },
    classifiers=(
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Scientific/Engineering :: Mathematics',
    ),
    license="Apache-2.0",
    keywords=['klein-gordon', 'asymptotic iteration method', 'bound states', 'noncentral potential',
              'eigenvalue', 'sturm sequence'],
)
