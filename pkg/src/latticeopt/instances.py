"""Instance generators and a JSON interchange format.

gen_hs builds a family of two-stage aircraft-allocation style instances
with a fixed 4x8 recourse matrix; gen_snd builds stochastic network design
instances on a small digraph, with first-stage binaries encoded as bounded
integers. Both are deterministic per seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .lattice import IntMatrix, IntVector, as_vector
from .opcost import Scenario, SipInstance

_JSON_SAFE = 2 ** 53

HS_GAMMA = (35, 40)
HS_COST = (16, 19, 47, 54, 0, 0, 0, 0)
HS_RECOURSE = (
    (1, 0, 1, 0, -1, 0, 0, 0),
    (0, 1, 0, 1, 0, -1, 0, 0),
    (2, 1, 0, 0, 0, 0, 1, 0),
    (1, 2, 0, 0, 0, 0, 0, 1),
)
HS_TECHNOLOGY = ((1, 0), (0, 1), (0, 0), (0, 0))

HS_BOX = ((300, 12000), (300, 12000), (200, 12000), (200, 12000))
HS_BOX_SCALED = ((3, 12), (3, 12), (2, 12), (2, 12))


@dataclass(frozen=True)
class HsConfig:
    scenario_count: int
    seed: int
    box: Optional[tuple] = None
    scaled: bool = False

    def __post_init__(self):
        if self.scenario_count < 1:
            raise ValueError("scenario_count must be positive")
        for lo, hi in self.resolved_box():
            if lo < 0 or hi < lo:
                raise ValueError("demand box must satisfy 0 <= lo <= hi")

    def resolved_box(self) -> tuple:
        if self.box is not None:
            return tuple((int(lo), int(hi)) for lo, hi in self.box)
        return HS_BOX_SCALED if self.scaled else HS_BOX


def hs_feasible(x, xi) -> IntVector:
    """Closed-form feasible recourse point for the fixed 4x8 system.

    Covers any shortfall with third-party capacity (y3, y4) and absorbs
    surplus or carryover demand through the slack block (u1..u4).
    """
    x = as_vector(x)
    xi = as_vector(xi)
    if len(x) != 2 or len(xi) != 4:
        raise ValueError("expected a 2-dim decision and a 4-dim demand")
    if xi.entries[2] < 0 or xi.entries[3] < 0:
        raise ValueError("demands xi3 and xi4 must be non-negative")
    x1, x2 = x.entries
    d1, d2, d3, d4 = xi.entries
    y3 = max(d1 - x1, 0)
    y4 = max(d2 - x2, 0)
    u1 = max(x1 - d1, 0)
    u2 = max(x2 - d2, 0)
    return IntVector((0, 0, y3, y4, u1, u2, d3, d4))


def gen_hs(config: HsConfig) -> SipInstance:
    """Sampled demand scenarios over the fixed recourse structure."""
    rng = random.Random(config.seed)
    box = config.resolved_box()
    n = config.scenario_count
    cost = IntVector(HS_COST)
    scenarios = []
    for _ in range(n):
        xi = tuple(rng.randint(lo, hi) for lo, hi in box)
        scenarios.append(Scenario(Fraction(1, n), cost, IntVector(xi)))
    return SipInstance(
        gamma=IntVector(HS_GAMMA),
        technology=IntMatrix(HS_TECHNOLOGY),
        recourse=IntMatrix(HS_RECOURSE),
        scenarios=tuple(scenarios),
        first_stage_bounds=(box[0][1], box[1][1]),
        feasible_recourse=hs_feasible,
    )


def hs_recourse_bounds(config: HsConfig) -> tuple:
    """Componentwise box containing every optimal recourse point.

    Valid whenever the decision respects the generator's first_stage_bounds.
    Production is pinned by the two capacity rows, third-party buying never
    exceeds the raw demand ceiling, and a surplus slack can only be positive
    at an optimum when the paired buy column is zero, which caps it by
    production plus decision minus the demand floor.
    """
    (l1, h1), (l2, h2), (l3, h3), (l4, h4) = config.resolved_box()
    y1, y2 = h3 // 2, h4 // 2
    return (y1, y2, h1, h2, y1 + h1 - l1, y2 + h2 - l2, h3, h4)


@dataclass(frozen=True)
class SndConfig:
    """Network design over a digraph; defaults give a directed triangle."""

    scenario_count: int
    seed: int
    vertices: int = 3
    arcs: tuple = ((0, 1), (1, 2), (2, 0))
    commodities: int = 1
    fixed_costs: tuple = (3, 4, 5)
    flow_costs: Optional[tuple] = None
    capacities: tuple = (2, 2, 2)
    max_demand: int = 1
    demand_sampler: Optional[Callable] = None

    def __post_init__(self):
        if self.scenario_count < 1:
            raise ValueError("scenario_count must be positive")
        if self.vertices < 2 or self.commodities < 1:
            raise ValueError("need at least two vertices and one commodity")
        for tail, head in self.arcs:
            if not (0 <= tail < self.vertices and 0 <= head < self.vertices):
                raise ValueError("arc endpoint out of range")
            if tail == head:
                raise ValueError("self-loops are not allowed")
        if len(self.fixed_costs) != len(self.arcs):
            raise ValueError("one fixed cost per arc required")
        if len(self.capacities) != len(self.arcs):
            raise ValueError("one capacity per arc required")
        if any(u < 1 for u in self.capacities):
            raise ValueError("capacities must be positive")
        if self.max_demand < 0:
            raise ValueError("max_demand must be non-negative")
        fc = self.resolved_flow_costs()
        if len(fc) != self.commodities or any(
                len(row) != len(self.arcs) for row in fc):
            raise ValueError("flow costs must be commodities x arcs")
        if any(q < 0 for row in fc for q in row):
            raise ValueError("flow costs must be non-negative")

    def resolved_flow_costs(self) -> tuple:
        if self.flow_costs is not None:
            return tuple(tuple(row) for row in self.flow_costs)
        return tuple((1,) * len(self.arcs) for _ in range(self.commodities))


def _default_demands(rng, config, commodity, scenario):
    d = [0] * config.vertices
    src, dst = rng.sample(range(config.vertices), 2)
    amount = rng.randint(0, config.max_demand)
    d[src] += amount
    d[dst] -= amount
    return tuple(d)


def gen_snd(config: SndConfig) -> SipInstance:
    """Equality-form network design: open arcs, route flows, slack capacity.

    First stage holds one open/closed variable and one bound slack per arc
    (x_a + s_a = 1); the recourse stage holds one flow variable per
    (commodity, arc) plus one capacity slack per arc per scenario.
    """
    rng = random.Random(config.seed)
    narcs = len(config.arcs)
    ncom = config.commodities
    nx = 2 * narcs
    ny = narcs * (ncom + 1)
    flow_costs = config.resolved_flow_costs()

    fs_rows = []
    for a in range(narcs):
        row = [0] * nx
        row[a] = 1
        row[narcs + a] = 1
        fs_rows.append(tuple(row))
    first_stage = (IntMatrix(fs_rows), IntVector((1,) * narcs))

    w_rows = []
    t_rows = []
    for c in range(ncom):
        for v in range(config.vertices):
            row = [0] * ny
            for a, (tail, head) in enumerate(config.arcs):
                if tail == v:
                    row[c * narcs + a] += 1
                if head == v:
                    row[c * narcs + a] -= 1
            w_rows.append(tuple(row))
            t_rows.append((0,) * nx)
    for a in range(narcs):
        row = [0] * ny
        for c in range(ncom):
            row[c * narcs + a] = 1
        row[ncom * narcs + a] = 1
        w_rows.append(tuple(row))
        trow = [0] * nx
        trow[a] = -config.capacities[a]
        t_rows.append(tuple(trow))

    cost = IntVector(tuple(flow_costs[c][a] for c in range(ncom)
                           for a in range(narcs)) + (0,) * narcs)
    sampler = config.demand_sampler or _default_demands

    n = config.scenario_count
    scenarios = []
    for s in range(n):
        h = []
        for c in range(ncom):
            d = sampler(rng, config, c, s)
            if len(d) != config.vertices or sum(d) != 0:
                raise ValueError(
                    "scenario %d commodity %d: demands must balance" % (s, c))
            h.extend(int(e) for e in d)
        h.extend([0] * narcs)
        scenarios.append(Scenario(Fraction(1, n), cost, IntVector(h)))

    gamma = IntVector(tuple(config.fixed_costs) + (0,) * narcs)
    return SipInstance(
        gamma=gamma,
        technology=IntMatrix(t_rows),
        recourse=IntMatrix(w_rows),
        scenarios=tuple(scenarios),
        first_stage_constraints=first_stage,
        first_stage_bounds=(1,) * nx,
    )


def _enc(x: int):
    return x if -_JSON_SAFE <= x <= _JSON_SAFE else str(x)


def _dec(v) -> int:
    return int(v)


def _enc_vec(v: IntVector) -> list:
    return [_enc(e) for e in v.entries]


def _enc_mat(m: IntMatrix) -> list:
    return [[_enc(e) for e in row] for row in m.rows]


def _dec_vec(data) -> IntVector:
    return IntVector(tuple(_dec(e) for e in data))


def _dec_mat(data) -> IntMatrix:
    return IntMatrix(tuple(tuple(_dec(e) for e in row) for row in data))


def instance_to_json(instance: SipInstance) -> str:
    """Bit-exact interchange form; integers beyond 2^53 become strings.

    The feasible-recourse hook is not representable and is dropped;
    per-scenario technology overrides have no serialized form and are
    rejected.
    """
    if any(s.technology is not None for s in instance.scenarios):
        raise ValueError("scenario technology overrides are not serializable")
    doc = {
        "gamma": _enc_vec(instance.gamma),
        "technology": _enc_mat(instance.technology),
        "recourse": _enc_mat(instance.recourse),
        "first_stage_bounds": (
            None if instance.first_stage_bounds is None
            else [_enc(u) for u in instance.first_stage_bounds]),
        "scenarios": [
            {
                "p_num": _enc(s.probability.numerator),
                "p_den": _enc(s.probability.denominator),
                "cost": _enc_vec(s.cost),
                "rhs": _enc_vec(s.rhs),
            }
            for s in instance.scenarios
        ],
    }
    if instance.first_stage_constraints is not None:
        A, b = instance.first_stage_constraints
        doc["first_stage_constraints"] = {
            "A": _enc_mat(A), "b": _enc_vec(as_vector(b))}
    return json.dumps(doc, indent=2)


def instance_from_json(text: str) -> SipInstance:
    doc = json.loads(text)
    scenarios = tuple(
        Scenario(
            Fraction(_dec(s["p_num"]), _dec(s["p_den"])),
            _dec_vec(s["cost"]),
            _dec_vec(s["rhs"]),
        )
        for s in doc["scenarios"]
    )
    constraints = None
    if doc.get("first_stage_constraints") is not None:
        block = doc["first_stage_constraints"]
        constraints = (_dec_mat(block["A"]), _dec_vec(block["b"]))
    bounds = doc.get("first_stage_bounds")
    return SipInstance(
        gamma=_dec_vec(doc["gamma"]),
        technology=_dec_mat(doc["technology"]),
        recourse=_dec_mat(doc["recourse"]),
        scenarios=scenarios,
        first_stage_constraints=constraints,
        first_stage_bounds=(
            None if bounds is None else tuple(_dec(u) for u in bounds)),
    )
