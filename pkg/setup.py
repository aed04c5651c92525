from setuptools import setup

setup(
    name='arborescent',
    version='1.0',
    description='Multi-variable Alexander polynomials of arborescent links',
    author='ChristianEschen',
    author_email='christian_eschen@hotmail.com',
    package_dir={'': 'arborescent'},
    py_modules=['polyring', 'tangle', 'diagram', 'engine', 'oracle', 'closedform',
                'cli', 'startup', 'file_utils', 'metrics'],
    install_requires=['numpy', 'networkx', 'pyyaml'],
    extras_require={'test': ['pytest', 'hypothesis', 'sympy']},
    entry_points={'console_scripts': ['arborescent=cli:main']},
)
