"""
Leitura e escrita do arquivo de rede.

Formato (UTF-8, um registro por linha, ``#`` inicia comentário)::

    [bases]
    f0_hz 50
    v_base_kv 400
    p_base_mva 100

    [buses]
    # id kind [P_rt_MW H p_f alpha]
    1 generator 1000 6 2 0.05
    2 load

    [lines]
    # from to susceptance_pu
    1 2 5

    [loads]
    # bus P_MW (negativo = fonte renovável)
    2 300

Os campos do gerador após P_rt são opcionais. A serialização escreve todos
os campos com ``repr``, de modo que ler, escrever e ler de novo devolve a
mesma rede.
"""

import logging
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from src.config import (
    DEFAULT_INERTIA_H,
    DEFAULT_POLE_PAIRS,
    DEFAULT_DROOP_ALPHA,
    NOMINAL_FREQUENCY_HZ,
    V_BASE_KV,
    P_BASE_MVA,
)
from src.models.grid import Bus, BusKind, GeneratorParams, GridModel, LineSpec
from src.utils.errors import GridFormatError
from src.utils.validators import Validators

logger = logging.getLogger(__name__)

SECTIONS = ("bases", "buses", "lines", "loads")
BASE_KEYS = ("f0_hz", "v_base_kv", "p_base_mva")
_TOKEN = re.compile(r"\S+")


class _Token:
    """Token com posição (linha e coluna, base 1)."""

    __slots__ = ("text", "line", "column")

    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.line = line
        self.column = column


class _GridParser:
    """Analisador de um arquivo de rede."""

    def __init__(self, text: str, source: Optional[str] = None):
        self.text = text
        self.source = source
        self.bases: Dict[str, float] = {}
        self.buses: List[Tuple[_Token, int, BusKind, tuple]] = []
        self.lines: List[Tuple[_Token, LineSpec]] = []
        self.loads: List[Tuple[_Token, int, float]] = []

    def error(self, message: str, token: Optional[_Token] = None, line: Optional[int] = None):
        if token is not None:
            return GridFormatError(message, token.line, token.column, self.source)
        return GridFormatError(message, line, None, self.source)

    # ========================================================================
    # CONVERSÃO DE CAMPOS
    # ========================================================================

    def _int(self, token: _Token, what: str) -> int:
        try:
            return int(token.text)
        except ValueError:
            raise self.error(f"expected integer {what}, found {token.text!r}", token) from None

    def _float(self, token: _Token, what: str) -> float:
        try:
            value = float(token.text)
        except ValueError:
            raise self.error(f"expected number {what}, found {token.text!r}", token) from None
        if value != value or value in (float("inf"), float("-inf")):
            raise self.error(f"non-finite {what}", token)
        return value

    def _positive(self, token: _Token, what: str) -> float:
        value = self._float(token, what)
        if not Validators.is_positive(value):
            raise self.error(f"non-positive parameter {what} = {token.text}", token)
        return value

    # ========================================================================
    # REGISTROS POR SEÇÃO
    # ========================================================================

    def _parse_base(self, tokens: List[_Token]) -> None:
        if len(tokens) != 2:
            raise self.error("base record must be 'key value'", tokens[0])
        key = tokens[0].text
        if key not in BASE_KEYS:
            raise self.error(f"unknown base key {key!r}", tokens[0])
        if key in self.bases:
            raise self.error(f"duplicate base key {key!r}", tokens[0])
        self.bases[key] = self._positive(tokens[1], key)

    def _parse_bus(self, tokens: List[_Token]) -> None:
        if len(tokens) < 2:
            raise self.error("bus record must be 'id kind ...'", tokens[0])
        bus_id = self._int(tokens[0], "bus id")
        if bus_id < 1:
            raise self.error(f"bus id must be >= 1, found {bus_id}", tokens[0])
        try:
            kind = BusKind(tokens[1].text.lower())
        except ValueError:
            raise self.error(f"unknown bus kind {tokens[1].text!r}", tokens[1]) from None
        fields: tuple = ()
        if kind is BusKind.GENERATOR:
            if not 3 <= len(tokens) <= 6:
                raise self.error("generator record must be 'id generator P_rt [H p_f alpha]'", tokens[0])
            rated = self._positive(tokens[2], "P_rt")
            inertia = self._positive(tokens[3], "H") if len(tokens) > 3 else DEFAULT_INERTIA_H
            poles = self._int(tokens[4], "p_f") if len(tokens) > 4 else DEFAULT_POLE_PAIRS
            if len(tokens) > 4 and not Validators.is_even_positive(poles):
                raise self.error(f"non-positive parameter p_f = {tokens[4].text} (must be even)", tokens[4])
            alpha = self._positive(tokens[5], "alpha") if len(tokens) > 5 else DEFAULT_DROOP_ALPHA
            fields = (rated, inertia, poles, alpha)
        elif len(tokens) != 2:
            raise self.error("load bus record takes no parameters", tokens[2])
        self.buses.append((tokens[0], bus_id, kind, fields))

    def _parse_line(self, tokens: List[_Token]) -> None:
        if len(tokens) != 3:
            raise self.error("line record must be 'from to susceptance'", tokens[0])
        a = self._int(tokens[0], "from bus")
        b = self._int(tokens[1], "to bus")
        if a == b:
            raise self.error(f"line connects bus {a} to itself", tokens[1])
        susceptance = self._positive(tokens[2], "susceptance")
        self.lines.append((tokens[0], LineSpec(a, b, susceptance)))

    def _parse_load(self, tokens: List[_Token]) -> None:
        if len(tokens) != 2:
            raise self.error("load record must be 'bus P_MW'", tokens[0])
        bus_id = self._int(tokens[0], "load bus")
        self.loads.append((tokens[0], bus_id, self._float(tokens[1], "load")))

    # ========================================================================
    # ANÁLISE E VALIDAÇÃO
    # ========================================================================

    def parse(self) -> GridModel:
        section = None
        handlers = {
            "bases": self._parse_base,
            "buses": self._parse_bus,
            "lines": self._parse_line,
            "loads": self._parse_load,
        }
        for number, raw in enumerate(self.text.splitlines(), start=1):
            content = raw.split("#", 1)[0]
            tokens = [_Token(m.group(), number, m.start() + 1) for m in _TOKEN.finditer(content)]
            if not tokens:
                continue
            head = tokens[0].text
            if head.startswith("["):
                if len(tokens) != 1 or not head.endswith("]"):
                    raise self.error(f"malformed section header {content.strip()!r}", tokens[0])
                name = head[1:-1].strip().lower()
                if name not in SECTIONS:
                    raise self.error(f"unknown section [{name}]", tokens[0])
                section = name
                continue
            if section is None:
                raise self.error("record outside of any section", tokens[0])
            handlers[section](tokens)
        return self._build()

    def _build(self) -> GridModel:
        f0 = self.bases.get("f0_hz", NOMINAL_FREQUENCY_HZ)
        omega0 = GridModel((), (), f0_hz=f0).omega0

        seen: Dict[int, _Token] = {}
        for token, bus_id, _, _ in self.buses:
            if bus_id in seen:
                raise self.error(f"duplicate bus id {bus_id}", token)
            seen[bus_id] = token
        if not self.buses:
            raise self.error("no buses declared", line=None)
        ids = sorted(seen)
        if not Validators.is_dense_range(ids):
            missing = sorted(set(range(1, max(ids) + 1)) - set(ids))
            raise self.error(f"bus ids must be dense 1..n, missing {missing}", line=None)

        buses: List[Optional[Bus]] = [None] * len(ids)
        for _, bus_id, kind, fields in self.buses:
            generator = None
            if kind is BusKind.GENERATOR:
                rated, inertia, poles, alpha = fields
                generator = GeneratorParams(rated, inertia, poles, alpha, omega0)
            buses[bus_id - 1] = Bus(bus_id, kind, generator)
        if not any(b.is_generator for b in buses):
            raise self.error("grid needs at least one generator bus", line=None)

        pairs: Dict[Tuple[int, int], _Token] = {}
        for token, line in self.lines:
            for end in (line.from_bus, line.to_bus):
                if end not in seen:
                    raise self.error(f"line references unknown bus {end}", token)
            if line.pair in pairs:
                raise self.error(f"duplicate line between buses {line.pair[0]} and {line.pair[1]}", token)
            pairs[line.pair] = token

        loads: Dict[int, float] = {}
        for token, bus_id, value in self.loads:
            if bus_id not in seen:
                raise self.error(f"load on unknown bus {bus_id}", token)
            if buses[bus_id - 1].is_generator:
                raise self.error(f"load declared on generator bus {bus_id}", token)
            if bus_id in loads:
                raise self.error(f"duplicate load for bus {bus_id}", token)
            loads[bus_id] = value

        if not Validators.is_connected(len(buses), pairs):
            raise self.error("disconnected network", line=None)

        grid = GridModel(
            buses=tuple(buses),
            lines=tuple(line for _, line in self.lines),
            loads_mw=loads,
            f0_hz=f0,
            v_base_kv=self.bases.get("v_base_kv", V_BASE_KV),
            p_base_mva=self.bases.get("p_base_mva", P_BASE_MVA),
        )
        logger.debug("Rede lida: n=%d, n_G=%d, n_L=%d, %d linhas",
                     grid.n, grid.n_g, grid.n_l, len(grid.lines))
        return grid


def parse_grid(text: str, source: Optional[str] = None) -> GridModel:
    """
    Lê o conteúdo de um arquivo de rede.

    Args:
        text: Conteúdo do arquivo
        source: Nome do arquivo usado nas mensagens de erro

    Returns:
        GridModel validado

    Raises:
        GridFormatError: sintaxe inválida, parâmetro não positivo, barra
            duplicada ou rede desconexa
    """
    return _GridParser(text, source).parse()


def load_grid(path: Union[str, Path]) -> GridModel:
    """Lê um arquivo de rede do disco."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GridFormatError(f"cannot read grid file: {exc.strerror}", source=str(path)) from exc
    return parse_grid(text, source=str(path))


def serialize_grid(grid: GridModel) -> str:
    """Escreve a rede no formato de arquivo (inverso exato de ``parse_grid``)."""
    out = ["[bases]",
           f"f0_hz {grid.f0_hz!r}",
           f"v_base_kv {grid.v_base_kv!r}",
           f"p_base_mva {grid.p_base_mva!r}",
           "",
           "[buses]",
           "# id kind P_rt_MW H p_f alpha"]
    for bus in grid.buses:
        if bus.is_generator:
            g = bus.generator
            out.append(f"{bus.bus_id} generator {g.rated_power_mw!r} {g.inertia_h!r} "
                       f"{g.poles} {g.droop_alpha!r}")
        else:
            out.append(f"{bus.bus_id} load")
    out += ["", "[lines]", "# from to susceptance_pu"]
    out += [f"{line.from_bus} {line.to_bus} {line.susceptance!r}" for line in grid.lines]
    out += ["", "[loads]", "# bus P_MW"]
    out += [f"{bus} {grid.loads_mw[bus]!r}" for bus in sorted(grid.loads_mw)]
    return "\n".join(out) + "\n"


def save_grid(grid: GridModel, path: Union[str, Path]) -> Path:
    """Grava a rede em disco."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_grid(grid), encoding="utf-8")
    return path
