import setuptools

with open('README.md', 'r') as fh:
    long_description = fh.read()

setuptools.setup(
    name='wigner_stone',
    version='0.0.1',
    description='Classify pure state maps of finite-dimensional C*-algebras and reconstruct the maps inducing them.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    package_dir={'wigner_stone': '.'},
    packages=['wigner_stone'] + [
        'wigner_stone.%s' % p for p in setuptools.find_packages(exclude=['examples*', 'tests*'])
    ],
    install_requires=[
        'clacks',
        'numpy',
        'scipy',
    ],
    entry_points={
        'console_scripts': [
            'wigner_stone=wigner_stone.core.interfaces:main',
        ],
    },
    classifiers=[
        'Programming Language :: Python',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
)
