import os

from setuptools import find_packages, setup


def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setup(
    name="rodeo",
    version="0.3.0",
    data_files=[
        ("", ["src/rodeo/config.ini"]),
        ("", ["src/rodeo/logging.conf"]),
    ],
    include_package_data=True,
    description="Model-robust criteria and search for two-level factorial designs",
    long_description=read("README.md"),
    long_description_content_type="text/markdown",
    license="GPLv3",
    python_requires=">=3.7",
    install_requires=[
        "click",
        "importlib_resources>=1.0.2",
        "joblib",
        "numpy>=1.17",
        "pandas>=0.25.3",
        "scipy>=1.4.0",
        "setuptools>=0.41",
        "tqdm",
    ],
    # Developer tools that are handy but not required for users.
    extras_require={
        "dev": [
            "black",
            "bumpversion",
            "check-manifest",
            "flake8>=3.7.0",
            "isort",
            "pyflakes",
            "pydocstyle",
            "parameterized",
            "pytest",
            "pytest-cov",
            "pytest-random-order",
            "sphinx-rtd-theme>=0.4.2",
            "tox",
        ],
    },
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    package_data={
        "rodeo": ["config.ini", "logging.conf"],
        "rodeo.catalog.data": ["*.txt", "checksums.json"],
    },
    zip_safe=True,
    test_suite="tests",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
    ],
    entry_points={
        "console_scripts": [
            "rodeo = rodeo.__main__:main_entry",
        ]
    },
)
