"""
Servicio de benchmarks.
Barre tamaños y semillas, resuelve cada instancia y junta las métricas en un
DataFrame de pandas listo para exportar a CSV.
"""

import sys
import time
from typing import Iterable, List, Optional

import pandas as pd
from tqdm import tqdm

from ..config import settings
from ..models import GenSpec, ModoGeneracion
from ..utils import SystemUtils, logger
from .generator_service import generate
from .multiway_service import solve_wgmwct
from .search_service import FPTMulticutSolver, leaf_bound


BENCH_COLUMNS = ['n', 'requests', 'k', 'nodes', 'leaves', 'rho_bound',
                 'fallback', 'shortfalls', 'time']


class BenchService:
    """Barridos de benchmark del solucionador FPT y del programa dinámico."""

    def __init__(self, config=None, threads: Optional[int] = None):
        """
        Args:
            config: Configuración opcional, usa settings.bench por defecto
            threads: Hilos para el solucionador FPT
        """
        self.config = config or settings.bench
        self.threads = threads

    def _progress(self, items: List, desc: str):
        return tqdm(items, desc=desc, file=sys.stderr, disable=not self.config.SHOW_PROGRESS)

    def run_fpt(self, sizes: Optional[Iterable[int]] = None, seeds: Optional[int] = None,
                base_seed: int = 0) -> pd.DataFrame:
        """
        Resuelve instancias aleatorias con solve_min.

        Args:
            sizes: Números de aristas a barrer
            seeds: Semillas por tamaño
            base_seed: Primera semilla

        Returns:
            pd.DataFrame: Una fila por instancia con las columnas de BENCH_COLUMNS
        """
        sizes = list(sizes or self.config.DEFAULT_SIZES)
        seeds = seeds if seeds is not None else self.config.DEFAULT_SEEDS
        jobs = [(n, base_seed + s) for n in sizes for s in range(seeds)]
        rows = []
        for n, seed in self._progress(jobs, "bench fpt"):
            count = max(1, round(n * self.config.REQUESTS_PER_EDGE))
            instance = generate(GenSpec(seed=seed, n=n, requests=count, mode=ModoGeneracion.RANDOM_TREE))
            solver = FPTMulticutSolver(threads=self.threads)
            start = time.perf_counter()
            k, _ = solver.solve_min(instance)
            elapsed = time.perf_counter() - start
            stats = solver.last_stats
            rows.append({
                'n': n,
                'requests': len(instance.requests),
                'k': k,
                'nodes': stats.nodes,
                'leaves': stats.leaves,
                'rho_bound': leaf_bound(k),
                'fallback': stats.fallback_count,
                'shortfalls': stats.signature_shortfalls,
                'time': elapsed,
            })
        frame = pd.DataFrame(rows, columns=BENCH_COLUMNS)
        logger.info(f"Bench FPT: {len(frame)} instancias, memoria {SystemUtils.get_memory_usage()}")
        return frame

    def run_dp(self, sizes: Iterable[int], q: int = 3, seed: int = 0,
               weight_range=(0, 100)) -> pd.DataFrame:
        """Tiempo del programa dinámico en árboles grandes con q fijo."""
        rows = []
        for n in self._progress(list(sizes), "bench dp"):
            instance = generate(GenSpec(seed=seed, n=n, requests=0, q=q, weight_range=weight_range))
            start = time.perf_counter()
            result = solve_wgmwct(instance)
            rows.append({'n': n, 'q': q, 'cost': result.cost, 'vertices': result.vertices,
                         'time': time.perf_counter() - start})
        return pd.DataFrame(rows, columns=['n', 'q', 'cost', 'vertices', 'time'])

    def to_csv(self, frame: pd.DataFrame, path=None) -> str:
        """CSV del DataFrame; lo escribe en `path` si se indica."""
        text = frame.to_csv(index=False, sep=self.config.CSV_SEPARATOR)
        if path is not None:
            with open(path, 'w', encoding='utf-8', newline='') as handle:
                handle.write(text)
        return text


__all__ = [
    'BENCH_COLUMNS',
    'BenchService',
]
