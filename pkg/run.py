#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
SOLUCIONADOR DE CORTES EN ÁRBOLES - PUNTO DE ENTRADA
Ejecuta la CLI del paquete desde el directorio del proyecto sin instalarlo.

Uso:
    python run.py <subcomando> [opciones]

Ejemplo:
    python run.py solve --input inst.tct --min
    python run.py --check-config
"""

import sys
import argparse
from pathlib import Path

# Agregar el directorio del proyecto al path
sys.path.insert(0, str(Path(__file__).parent))

try:
    from cortes_arboles import check_dependencies, get_system_info
    from cortes_arboles.main import run
    from cortes_arboles.config import settings
    from cortes_arboles.utils import logger
except ImportError as e:
    print(f"ERROR: Error importando módulos del sistema: {e}", file=sys.stderr)
    print("Ejecute: pip install -r requirements.txt", file=sys.stderr)
    sys.exit(2)


def mostrar_banner():
    """Muestra el banner del sistema en stderr."""
    banner = f"""
╔══════════════════════════════════════════════════════════════╗
║              SOLUCIONADOR DE CORTES EN ÁRBOLES               ║
╠══════════════════════════════════════════════════════════════╣
║ Versión: {settings.base.VERSION:<52}║
╚══════════════════════════════════════════════════════════════╝

Configuración:
   • Hilos de búsqueda: {settings.solver.MAX_THREADS}
   • Respaldo genérico permitido: {settings.solver.ALLOW_FALLBACK}
   • Límite de conjuntos de terminales (DP): {settings.dp.MAX_TERMINAL_SETS}
   • Logs del sistema: {settings.base.LOGS_DIR}
"""
    print(banner, file=sys.stderr)


def verificar_configuracion() -> bool:
    """
    Verifica dependencias y configuración.

    Returns:
        bool: True si no falta nada y la configuración es válida
    """
    info = get_system_info()
    print(f"Verificando cortes-arboles {info['version']}...", file=sys.stderr)
    dependencias = check_dependencies()
    for nombre, disponible in dependencias['details'].items():
        print(f"   {'[OK]' if disponible else '[FALTA]'} {nombre}", file=sys.stderr)
    validacion = info['configuration_valid']
    for modulo, es_valido in validacion.items():
        estado = "[OK]" if es_valido else "[ERROR]"
        print(f"   {estado} {modulo.title()}", file=sys.stderr)
    return dependencias['all_available'] and all(validacion.values())


def main() -> int:
    """Función principal: opciones propias y delegación a la CLI."""
    parser = argparse.ArgumentParser(
        description="Solucionador de Cortes en Árboles",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        add_help=False,
        epilog="""
Ejemplos de uso:
  python run.py solve --input inst.tct --min --json
  python run.py gen --gadget star-triangle
  python run.py --check-config      # Solo verificar configuración
        """
    )
    parser.add_argument('--check-config', action='store_true',
                        help='Solo verificar configuración y salir')
    parser.add_argument('--banner', action='store_true',
                        help='Mostrar banner inicial')
    args, rest = parser.parse_known_args()

    if args.banner:
        mostrar_banner()

    if args.check_config:
        if verificar_configuracion():
            print("\nConfiguración del sistema: VÁLIDA", file=sys.stderr)
            return 0
        print("\nConfiguración del sistema: TIENE PROBLEMAS", file=sys.stderr)
        return 1

    logger.debug(f"Delegando a la CLI: {rest}")
    return run(rest)


if __name__ == "__main__":
    sys.exit(main())
