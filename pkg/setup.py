from setuptools import setup

with open("README.md", "r") as readme:
    long_description = readme.read()


setup(
    name='lsskit',
    version="0.1.0",
    license='Apache License 2.0',
    author='Research Software Engineering, FAS RC',
    description='Certificates for finite large scale spaces: bounded scale '
                'measure, property A witnesses and coarse maps',
    long_description = long_description,
    long_description_content_type = "text/markdown",
    packages=[
        'lsskit', 'lsskit.structure', 'lsskit.measure', 'lsskit.propa',
        'lsskit.cli', 'lsskit.util',
        'lsskit_fixtures'
    ],
    package_dir={
        "lsskit": "./src/python/lsskit",
        "lsskit_fixtures": "./src/yml"
    },
    install_requires=[
        'attrs>=19.3.0',
        'click>=7.1.2',
        'networkx>=2.5',
        'PyYAML>=5.3.1',
    ],
    extras_require={
        "test": [
            'pytest',
            'hypothesis',
        ],
        "doc": [
            'sphinx',
            'sphinx_rtd_theme',
            'recommonmark',
            'sphinx_paramlinks',
            'sphinx_markdown_tables',
        ]
    },
    entry_points={
        "console_scripts": [
            "lsskit = lsskit.cli.commands:cli",
        ]
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent"],
    package_data = {
        "lsskit_fixtures": ["*.yaml"],
    }
)
