from setuptools import setup, find_packages

setup(
    name='inertia_lab',
    version='0.2.0',
    packages=find_packages(exclude=['tests']),
    python_requires='>=3.10',
    install_requires=[
        'pandas',
        'sympy',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['inertia-lab=inertia_lab.cli:main'],
    },
    description='Exact checks of inertia groups of covers of the projective line in characteristic p',
)
