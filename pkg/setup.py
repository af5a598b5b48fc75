#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Instalación de cortes-arboles.

    python setup.py install      # instala el paquete y el comando cortes-arboles
    python setup.py develop      # modo editable
    python setup.py verify       # dependencias, configuración y prueba de humo
    python setup.py check-deps   # solo dependencias
"""

import sys
from pathlib import Path
from setuptools import setup, find_packages, Command
from setuptools.command.install import install
from setuptools.command.develop import develop

# =============================================================================
# METADATA DEL PROYECTO
# =============================================================================

PROJECT_NAME = "cortes-arboles"
VERSION = "1.0.0"
DESCRIPTION = "Multicorte FPT y corte multivía generalizado ponderado en árboles"
MIN_PYTHON = (3, 9)

BASE_DIR = Path(__file__).parent.absolute()

# =============================================================================
# DEPENDENCIAS
# =============================================================================

INSTALL_REQUIRES = [
    'numpy>=1.24.0',
    'networkx>=3.1',
    'pandas>=2.0.0',
    'python-dotenv>=1.0.0',
    'colorlog>=6.7.0',
    'tqdm>=4.66.0',
    'psutil>=5.9.0',
]

EXTRAS_REQUIRE = {
    'dev': [
        'pytest>=7.0.0',
        'pytest-cov>=4.0.0',
        'hypothesis>=6.80.0',
    ],
}

IMPORT_NAMES = {'python-dotenv': 'dotenv'}


def _distribution_name(requirement: str) -> str:
    for separator in ('>=', '==', '<'):
        requirement = requirement.split(separator)[0]
    return requirement.strip()


def missing_packages(requirements):
    """Distribuciones de la lista que no se pueden importar."""
    missing = []
    for requirement in requirements:
        name = _distribution_name(requirement)
        try:
            __import__(IMPORT_NAMES.get(name, name.replace('-', '_')))
        except ImportError:
            missing.append(name)
    return missing


# =============================================================================
# COMANDOS PERSONALIZADOS
# =============================================================================

class _SimpleCommand(Command):
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass


class CheckDepsCommand(_SimpleCommand):
    """Verifica la versión de Python y las dependencias de ejecución."""

    description = 'Verificar Python y dependencias'

    def run(self):
        if sys.version_info < MIN_PYTHON:
            print(f"ERROR: se requiere Python {'.'.join(map(str, MIN_PYTHON))}+, hay {sys.version.split()[0]}")
            sys.exit(1)
        missing = missing_packages(INSTALL_REQUIRES)
        for requirement in INSTALL_REQUIRES:
            name = _distribution_name(requirement)
            print(f"[{'FALTA' if name in missing else 'OK'}] {name}")
        if missing:
            print("Ejecute: pip install -r requirements.txt")
            sys.exit(1)


class VerifyCommand(CheckDepsCommand):
    """Dependencias, validación de settings y una resolución de prueba."""

    description = 'Verificar dependencias, configuración y solucionador'

    def run(self):
        super().run()
        sys.path.insert(0, str(BASE_DIR))
        from cortes_arboles.config import settings
        from cortes_arboles.services.generator_service import GADGETS
        from cortes_arboles.services.oracle_service import brute_force_min_cut
        from cortes_arboles.services.search_service import solve_min

        failed = [section for section, ok in settings.validate_all().items() if not ok]
        if failed:
            print(f"ERROR: configuración inválida en {', '.join(failed)}")
            sys.exit(1)
        print("[OK] configuración")

        for name in ('star-triangle', 'special-quadruple'):
            instance = GADGETS[name]()
            size, _ = solve_min(instance)
            expected, _ = brute_force_min_cut(instance)
            if size != expected:
                print(f"ERROR: {name} dio {size}, el oráculo {expected}")
                sys.exit(1)
            print(f"[OK] {name}: óptimo {size}")


class PostInstallCommand(install):

    def run(self):
        install.run(self)
        print("Instalado. 'cortes-arboles --help' lista los subcomandos.")


class PostDevelopCommand(develop):

    def run(self):
        develop.run(self)
        print("Modo desarrollo listo. Pruebas: pytest -m 'not slow'")


# =============================================================================
# CONFIGURACIÓN DE SETUP
# =============================================================================

readme_file = BASE_DIR / 'README.md'
long_description = readme_file.read_text(encoding='utf-8') if readme_file.exists() else DESCRIPTION

setup(
    name=PROJECT_NAME,
    version=VERSION,
    description=DESCRIPTION,
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    python_requires=">=3.9",
    install_requires=INSTALL_REQUIRES,
    extras_require=EXTRAS_REQUIRE,
    entry_points={
        'console_scripts': [
            'cortes-arboles=cortes_arboles.main:main',
        ],
    },
    cmdclass={
        'verify': VerifyCommand,
        'check-deps': CheckDepsCommand,
        'install': PostInstallCommand,
        'develop': PostDevelopCommand,
    },
    keywords=['multicut', 'multiway cut', 'trees', 'fixed-parameter tractable', 'dynamic programming'],
)
