"""
Redes sintéticas usadas nos exemplos e nos testes.

Nenhuma delas reproduz uma rede real; os parâmetros seguem valores típicos
(geradores de 500 a 1500 MW, H = 6 s, α = 0,05, linhas de 2 a 10 p.u.).
"""

from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from src.config import DEFAULT_DROOP_ALPHA, DEFAULT_INERTIA_H, DEFAULT_POLE_PAIRS
from src.models.grid import Bus, BusKind, GeneratorParams, GridModel, LineSpec


def build_grid(generators: Dict[int, float], n: int, lines: Iterable[Tuple[int, int, float]],
               loads_mw: Optional[Dict[int, float]] = None, f0_hz: float = 50.0,
               v_base_kv: float = 400.0, p_base_mva: float = 100.0) -> GridModel:
    """
    Monta uma rede a partir de {barra: P_rt em MW} para os geradores.

    As demais barras de 1..n são cargas.
    """
    probe = GridModel((), (), f0_hz=f0_hz)
    buses = []
    for bus_id in range(1, n + 1):
        if bus_id in generators:
            params = GeneratorParams(float(generators[bus_id]), DEFAULT_INERTIA_H,
                                     DEFAULT_POLE_PAIRS, DEFAULT_DROOP_ALPHA, probe.omega0)
            buses.append(Bus(bus_id, BusKind.GENERATOR, params))
        else:
            buses.append(Bus(bus_id, BusKind.LOAD))
    return GridModel(
        buses=tuple(buses),
        lines=tuple(LineSpec(a, b, float(s)) for a, b, s in lines),
        loads_mw={k: float(v) for k, v in (loads_mw or {}).items()},
        f0_hz=f0_hz,
        v_base_kv=v_base_kv,
        p_base_mva=p_base_mva,
    )


def two_bus_grid(susceptance: float = 5.0, load_mw: float = 500.0) -> GridModel:
    """Menor rede válida: um gerador e uma carga."""
    return build_grid({1: 1000.0}, 2, [(1, 2, susceptance)], {2: load_mw})


def six_bus_grid() -> GridModel:
    """Três geradores de 1 GW (barras 1 a 3) e três cargas (barras 4 a 6)."""
    lines = [(1, 2, 10.0), (2, 3, 10.0), (1, 4, 8.0), (2, 5, 8.0), (3, 6, 8.0),
             (4, 5, 5.0), (5, 6, 5.0)]
    return build_grid({1: 1000.0, 2: 1000.0, 3: 1000.0}, 6, lines,
                      {4: 800.0, 5: 900.0, 6: 700.0})


def chain_grid(n: int = 12, rated_mw: float = 500.0, susceptance: float = 100.0,
               load_mw: float = 300.0) -> GridModel:
    """Cadeia de n barras alternando gerador (ímpares) e carga (pares)."""
    generators = {b: rated_mw for b in range(1, n + 1, 2)}
    lines = [(b, b + 1, susceptance) for b in range(1, n)]
    loads = {b: load_mw for b in range(2, n + 1, 2)}
    return build_grid(generators, n, lines, loads)


GRID20_LINES = [
    (1, 9, 6.0), (9, 10, 5.0), (10, 2, 6.0), (2, 11, 8.0), (11, 3, 8.0), (3, 12, 6.0),
    (12, 4, 7.0), (4, 13, 8.0), (13, 5, 6.0), (5, 14, 7.0), (14, 6, 8.0), (6, 15, 6.0),
    (15, 7, 7.0), (7, 16, 8.0), (16, 8, 6.0), (8, 17, 7.0), (17, 1, 6.0), (18, 11, 5.0),
    (18, 14, 5.0), (19, 12, 4.0), (19, 16, 5.0), (20, 13, 5.0), (20, 17, 6.0), (9, 18, 3.0),
]

GRID20_LOADS = {9: -600.0, 10: -500.0, 11: 900.0, 12: 800.0, 13: 1000.0, 14: 700.0,
                15: 900.0, 16: 800.0, 17: 1000.0, 18: 600.0, 19: 500.0, 20: 700.0}


def grid20() -> GridModel:
    """Oito geradores de 1,5 GW e doze cargas; barras 9 e 10 são renováveis."""
    return build_grid({b: 1500.0 for b in range(1, 9)}, 20, GRID20_LINES, GRID20_LOADS)


def random_connected_grid(n: int, rng: np.random.Generator, n_g: Optional[int] = None,
                          extra_edges: Optional[int] = None) -> GridModel:
    """
    Rede conexa aleatória: árvore geradora mais arestas extras.

    Os primeiros ``n_g`` identificadores são geradores.
    """
    if n < 2:
        raise ValueError("random grids need at least two buses")
    n_g = n_g if n_g is not None else int(rng.integers(1, n))
    order = rng.permutation(n) + 1
    edges: Dict[Tuple[int, int], float] = {}
    for k in range(1, n):
        a = int(order[k])
        b = int(order[rng.integers(0, k)])
        edges[(min(a, b), max(a, b))] = float(rng.uniform(1.0, 20.0))
    extra = extra_edges if extra_edges is not None else int(rng.integers(0, n))
    for _ in range(extra):
        a, b = (int(x) for x in rng.choice(n, size=2, replace=False) + 1)
        edges.setdefault((min(a, b), max(a, b)), float(rng.uniform(1.0, 20.0)))
    generators = {b: float(rng.uniform(200.0, 1500.0)) for b in range(1, n_g + 1)}
    loads = {b: float(rng.uniform(-200.0, 800.0)) for b in range(n_g + 1, n + 1)}
    return build_grid(generators, n, [(a, b, s) for (a, b), s in edges.items()], loads)


def relabel_loads(grid: GridModel, permutation: Sequence[int]) -> GridModel:
    """
    Reordena os identificadores das barras de carga.

    ``permutation[k]`` é a nova posição (entre as cargas) da k-ésima carga.
    """
    load_buses = grid.load_buses
    mapping = {bus: bus for bus in grid.generator_buses}
    for k, bus in enumerate(load_buses):
        mapping[bus] = load_buses[permutation[k]]
    buses = sorted((Bus(mapping[b.bus_id], b.kind, b.generator) for b in grid.buses),
                   key=lambda b: b.bus_id)
    lines = tuple(LineSpec(mapping[l.from_bus], mapping[l.to_bus], l.susceptance) for l in grid.lines)
    loads = {mapping[b]: v for b, v in grid.loads_mw.items()}
    return GridModel(tuple(buses), lines, loads, grid.f0_hz, grid.v_base_kv, grid.p_base_mva)
