import os
from setuptools import setup, Command

with open(os.path.join(os.path.dirname(__file__), 'README.rst')) as readme:
    README = readme.read()

os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))


class PyTest(Command):
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        import subprocess
        import sys

        errno = subprocess.call([sys.executable, '-m', 'pytest', 'homzero'])
        raise SystemExit(errno)


setup(
    name='homzero',
    version='0.4.0',
    author='Homzero contributors',
    keywords='django semigroup homology smith normal form presentation',
    packages=['homzero', 'homzero.management', 'homzero.management.commands'],
    include_package_data=True,
    license='MIT',
    description='0-homology of finite semigroups with zero, for Django projects and the command line',
    long_description=README,
    python_requires='>=3.8',
    install_requires=['django>=2.2', 'blessed', 'numpy', 'networkx'],
    test_requires=['pytest', 'pytest-django', ],
    cmdclass={'test': PyTest},
    classifiers=[
        'Development Status :: 4 - Beta',
        'Framework :: Django',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: POSIX',
        'Operating System :: MacOS',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    entry_points={
        'console_scripts': [
            'homzero = homzero.__main__:main',
        ]
    },
    extras_require={
        'psutil': ["psutil>=5.7"],
    }
)
