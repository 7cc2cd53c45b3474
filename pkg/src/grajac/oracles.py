"""Closed-form predictions per family and a sweep runner that checks them.

Each prediction is canonicalized through :func:`from_elementary_divisors`
so it can be compared with the directly computed Picard group by equality.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import IO, Iterable, Iterator

from .abelian import AbelianGroup, from_cyclic_orders, order, torsion
from .analysis import (
    cycle_orientation,
    double_chain,
    find_global_sink,
    laplacian,
    picard_group,
    predicted_rank,
)
from .errors import GrajacError, InfeasibleParameters, NotATree, UnknownFamily, WheelTooSmall
from .families import (
    WheelVariant,
    all_orientation_words,
    apply_extension,
    extension_sites,
    gen_cycle,
    gen_multipartite,
    gen_random_tree,
    gen_two_opposite_paths,
    gen_wheel,
    matrix_M,
    single_term_cycle,
    two_path_parameters,
)
from .graph import DirectedMultigraph
from .linalg import snf_diagonal
from .rng import DEFAULT_SEED, SplitMix64

# --- oracles -------------------------------------------------------------


def is_tree(g: DirectedMultigraph) -> bool:
    pairs = {}
    for a in g.arcs:
        key = frozenset((a.source, a.target))
        pairs[key] = pairs.get(key, 0) + a.mult
    simple = all(m == 1 for m in pairs.values())
    return simple and len(pairs) == g.vertex_count - 1 and g.is_connected()


def oracle_tree(g: DirectedMultigraph) -> AbelianGroup:
    """Directed trees have free Picard group of rank = terminal component count."""
    if not is_tree(g):
        raise NotATree("underlying graph is not a tree")
    return AbelianGroup(predicted_rank(g))


def _z_times_cyclic(k: int) -> AbelianGroup:
    return from_cyclic_orders(1, [k])


def oracle_two_path_cycle(n: int, k: int) -> AbelianGroup:
    if n < 3 or not 0 <= k <= n - 2:
        raise InfeasibleParameters(f"no two-opposite-paths cycle with n={n}, k={k}")
    return _z_times_cyclic(k + 2)


def oracle_global_sink_cycle(n: int, k: int) -> AbelianGroup:
    if n < 3 or k < 0 or k + 2 > n:
        raise InfeasibleParameters(f"double chain of length {k} does not fit in a {n}-cycle")
    return _z_times_cyclic(k + 2)


def oracle_wheel(n: int, variant=WheelVariant.SPOKES_OUT) -> AbelianGroup:
    """Spokes pointing out have a closed form.  For the other two variants
    only ``Pic(W_n) = Pic(W_n')`` is known, so the computed group of the
    undirected wheel is returned as the reference value."""
    variant = WheelVariant.parse(variant)
    if n < 4:
        raise WheelTooSmall(f"wheel needs n >= 4, got {n}")
    if variant is WheelVariant.SPOKES_OUT:
        if n % 2 == 0:
            return from_cyclic_orders(1, [n - 1, n - 1])
        return from_cyclic_orders(1, [(n - 1) // 2, 2 * (n - 1)])
    return picard_group(gen_wheel(n, WheelVariant.UNDIRECTED))


def oracle_cramer_solution(n: int) -> tuple[list[int], int]:
    """Integral solution of ``M_n x = (n + 1) 1`` and the gcd of its entries."""
    if n < 1:
        raise GrajacError(f"n must be >= 1, got {n}")
    x = [(n + 1) * k * (n + 1 - k) // 2 for k in range(1, n + 1)]
    if matrix_M(n) @ x != [n + 1] * n:
        raise GrajacError(f"closed-form solution fails for n={n}")
    g = n + 1 if n % 2 == 0 else (n + 1) // 2
    return x, g


def oracle_bipartite(a: int, b: int) -> AbelianGroup:
    return from_cyclic_orders(b, [b] * (a - 1))


def oracle_three_layer(a: int, b: int, c: int) -> AbelianGroup:
    if b == 1:
        return AbelianGroup(c)
    g, l = math.gcd(b, c), math.lcm(b, c)
    if a >= b - 1:
        orders = [g] * (b - 2) + [b] * (a - b + 1) + [l] * (b - 2) + [b * c]
    else:
        orders = [g] * (a - 1) + [c] * (b - a - 1) + [l] * (a - 1) + [b * c]
    return from_cyclic_orders(c, orders)


def three_layer_torsion_order(a: int, b: int, c: int) -> int:
    return b**a * c ** (b - 1)


# --- sweep records -------------------------------------------------------

MODES = ("group", "rank", "order", "explore")


@dataclass(frozen=True)
class TheoremCheck:
    """One comparison between a prediction and a computed Picard group.

    ``mode`` says what is compared: the whole group, only the free rank,
    only the torsion order, or nothing (``explore`` records data only).
    """

    theorem: str
    params: dict
    predicted: object
    computed: AbelianGroup
    mode: str = "group"
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.mode == "group":
            return self.predicted == self.computed
        if self.mode == "rank":
            return self.predicted == self.computed.free_rank
        if self.mode == "order":
            return self.predicted == order(torsion(self.computed))
        return True

    def to_json(self) -> dict:
        if self.mode == "group":
            predicted = self.predicted.to_json()
        elif self.mode == "rank":
            predicted = {"rank": self.predicted}
        elif self.mode == "order":
            predicted = {"order": self.predicted}
        else:
            predicted = None
        out = {
            "theorem": self.theorem,
            "params": self.params,
            "predicted": predicted,
            "computed": self.computed.to_json(),
            "pass": self.passed,
        }
        out.update(self.extra)
        return out


def _check(theorem, params, predicted, g, mode="group", computed=None, **extra):
    if computed is None:
        computed = picard_group(g)
    return TheoremCheck(theorem, params, predicted, computed, mode, extra)


# --- per-family instances and evaluators --------------------------------


def _tree_instances(n_max=15, count=500, seed=DEFAULT_SEED, n_min=1):
    rng = SplitMix64(seed)
    for i in range(count):
        yield {
            "index": i,
            "n": rng.between(n_min, n_max),
            "seed": rng.next_u64(),
            "bidirectional_prob": rng.below(5) / 4,
        }


def _eval_tree(p):
    g = gen_random_tree(p["n"], p["seed"], p["bidirectional_prob"])
    return [_check("tree-free", p, oracle_tree(g), g)]


def _exhaustive_instances(n_max=6, n_min=3, extensions=True):
    for n in range(n_min, n_max + 1):
        for word in all_orientation_words(n):
            yield {"n": n, "word": word, "extensions": extensions}


def _eval_exhaustive(p):
    g = gen_cycle(p["word"])
    pic = picard_group(g)
    out = [_check("terminal-rank", {"n": p["n"], "word": p["word"]}, predicted_rank(g), g, "rank", pic)]
    if p["extensions"]:
        for kind, v, toward in extension_sites(g):
            h = apply_extension(g, (kind, v, toward))
            params = {"n": p["n"], "word": p["word"], "extension": kind, "vertex": v}
            if toward is not None:
                params["toward"] = toward
            out.append(_check("degree-extension", params, pic, h))
    return out


def _two_path_instances(n_max=12, n_min=3):
    for n, k, p1 in two_path_parameters(n_max, n_min):
        yield {"n": n, "k": k, "p1_len": p1}


def _eval_two_path(p):
    g = gen_two_opposite_paths(p["n"], p["k"], p["p1_len"])
    return [_check("two-path", p, oracle_two_path_cycle(p["n"], p["k"]), g)]


def _global_sink_instances(n_max=8, n_min=3):
    for n in range(n_min, n_max + 1):
        for word in all_orientation_words(n):
            yield {"n": n, "word": word}


def _eval_global_sink(p):
    g = gen_cycle(p["word"])
    if find_global_sink(g) is None:
        return []
    k = double_chain(g).length
    params = dict(p, k=k)
    return [_check("cycle-global-sink", params, oracle_global_sink_cycle(p["n"], k), g)]


def _single_term_instances(n_max=9, n_min=4):
    for n in range(n_min, n_max + 1):
        for k in range(1, n + 1):
            yield {"n": n, "k": k}


def _eval_single_term(p):
    g = single_term_cycle(p["n"], p["k"])
    _, word = cycle_orientation(g)
    return [_check("single-term", p, from_cyclic_orders(1, [p["k"]]), g, word=word)]


def _wheel_instances(n_max=30, n_min=4):
    for n in range(n_min, n_max + 1):
        yield {"n": n}


def _eval_wheel(p):
    n = p["n"]
    pair = _check(
        "wheel-undirected-vs-spokes-in",
        p,
        oracle_wheel(n, WheelVariant.UNDIRECTED),
        gen_wheel(n, WheelVariant.SPOKES_IN),
    )
    out_g = gen_wheel(n, WheelVariant.SPOKES_OUT)
    return [pair, _check("wheel-spokes-out", p, oracle_wheel(n, WheelVariant.SPOKES_OUT), out_g)]


def _bipartite_instances(a_max=8, b_max=8):
    for a, b in product(range(1, a_max + 1), range(1, b_max + 1)):
        yield {"a": a, "b": b}


def _eval_bipartite(p):
    g = gen_multipartite([p["a"], p["b"]])
    return [_check("bipartite-pic", p, oracle_bipartite(p["a"], p["b"]), g)]


def _three_layer_instances(a_max=6, b_max=6, c_max=6):
    for a, b, c in product(range(1, a_max + 1), range(1, b_max + 1), range(1, c_max + 1)):
        yield {"a": a, "b": b, "c": c}


def _eval_three_layer(p):
    a, b, c = p["a"], p["b"], p["c"]
    g = gen_multipartite([a, b, c])
    pic = picard_group(g)
    return [
        _check("three-layer-pic", p, oracle_three_layer(a, b, c), g, computed=pic),
        _check("three-layer-jac-order", p, three_layer_torsion_order(a, b, c), g, "order", pic),
    ]


def _explore_instances(t=4, size_max=3, layers=None):
    if layers is not None:
        for sizes in layers:
            yield {"layers": list(sizes)}
        return
    for sizes in product(range(1, size_max + 1), repeat=t):
        yield {"layers": list(sizes)}


def _eval_explore(p):
    g = gen_multipartite(p["layers"])
    diag = snf_diagonal(laplacian(g))
    return [_check("multipartite-explore", p, None, g, "explore", snf_diagonal=diag)]


FAMILIES = {
    "trees": (_tree_instances, _eval_tree),
    "cycles-exhaustive": (_exhaustive_instances, _eval_exhaustive),
    "cycles-two-path": (_two_path_instances, _eval_two_path),
    "cycles-global-sink": (_global_sink_instances, _eval_global_sink),
    "cycles-single-term": (_single_term_instances, _eval_single_term),
    "wheels": (_wheel_instances, _eval_wheel),
    "bipartite": (_bipartite_instances, _eval_bipartite),
    "three-layer": (_three_layer_instances, _eval_three_layer),
    "multipartite-explore": (_explore_instances, _eval_explore),
}


def _evaluate(task):
    family, params = task
    return FAMILIES[family][1](params)


def sweep_instances(family: str, **params) -> list[dict]:
    if family not in FAMILIES:
        raise UnknownFamily(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    return list(FAMILIES[family][0](**params))


def run_sweep(family: str, jobs: int = 1, **params) -> list[TheoremCheck]:
    """Evaluate every instance of ``family``; record order does not depend on ``jobs``."""
    tasks = [(family, p) for p in sweep_instances(family, **params)]
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = pool.map(_evaluate, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))
            results = list(chunks)
    else:
        results = [_evaluate(t) for t in tasks]
    return [rec for chunk in results for rec in chunk]


def default_jobs() -> int:
    value = os.environ.get("GRAJAC_JOBS", "")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def write_jsonl(records: Iterable[TheoremCheck], out: IO[str]) -> None:
    for rec in records:
        out.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")


def observed_jacobians(records: Iterable[TheoremCheck]) -> dict[int, list[AbelianGroup]]:
    """Distinct Jacobians seen per cycle length in a cycles sweep."""
    seen: dict[int, set] = {}
    for rec in records:
        n = rec.params.get("n")
        if n is not None:
            seen.setdefault(n, set()).add(torsion(rec.computed))
    return {n: sorted(gs, key=lambda h: (order(h), h.invariant_factors)) for n, gs in sorted(seen.items())}


def summarize(records: list[TheoremCheck]) -> tuple[int, int]:
    return sum(r.passed for r in records), len(records)


def iter_failures(records: Iterable[TheoremCheck]) -> Iterator[TheoremCheck]:
    return (r for r in records if not r.passed)
