from setuptools import setup

setup(name='koc2',
      version='1.1',
      packages=['koc2', 'tests'],
      package_data={'koc2': ['fixtures/*.txt']},
      description='Exact Ext over motivic and equivariant A(1) and E(1).',
      long_description=open('README.rst').read(),
      install_requires=['numpy'],
      tests_require=['hypothesis'],
      extras_require={'tests': ['hypothesis']},
      entry_points={'console_scripts': ['koc2 = koc2.cli:main']},
      classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        ])
