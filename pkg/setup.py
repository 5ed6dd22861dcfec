from setuptools import find_packages, setup

LATEST_VERSION = "0.1.0"

exclude_packages = [
    "pytest",
    "pytest-asyncio",
    "tests",
    "tests.*",
]

with open(r"README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

with open("requirements.txt", "r") as f:
    reqs = [line.strip() for line in f
            if line.strip() and not line.startswith("#") and not any(pkg in line for pkg in exclude_packages)]

setup(
    name="sparsecut",
    version=LATEST_VERSION,
    description="SDP relaxations, low-diameter covers and rounding schemes for uniform sparsest cut",
    package_dir={'sparsecut': 'sparsecut'},
    packages=find_packages(exclude=exclude_packages),
    py_modules=["cli", "json_schema_generator"],
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.10',
    install_requires=reqs,
    entry_points={"console_scripts": ["sparsecut=cli:main"]},
)
