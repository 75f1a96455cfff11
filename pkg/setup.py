from setuptools import setup, find_packages

setup(
    name='bargfock',
    version='0.1.0',
    packages=find_packages(where='src'),
    package_dir={'': 'src'},
    install_requires=[
        'numpy>=1.26',
        'scipy>=1.11',
        'pydantic>=2.5',
        'typer>=0.9.0',
        'rich>=13.0.0',
    ],
    entry_points={
        'console_scripts': ['bargfock=bargfock.cli:run'],
    },
)
