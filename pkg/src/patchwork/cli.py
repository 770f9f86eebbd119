"""Command-line interface: generation, validation, invariants, verification."""

from __future__ import annotations

import json
import random
import sys
import time

import click

from .cellpairs import XiPoset, check_thin, chain_complex
from .duality import omega_boundary_is_zero, verify_bar, verify_pd
from .hodgeclosed import e_total, hodge_table
from .hodgecosheaf import FpkCosheaf, dim_formula, hodge_poset
from .phase import (RealPhaseStructure, enumerate_all, from_sign_distribution,
                    random_kn, to_sign_distribution, trivial_k0)
from .polytope import LatticePolytope, dilated_simplex
from .tmanifold import (betti_bound_check, betti_via_cosheaf,
                        betti_via_simplicial, euler_and_signature_check,
                        export_svg)
from .triangulation import Triangulation, generate_alcove

PD_SIZE_LIMIT = 200


def _echo_json(data):
    click.echo(json.dumps(data, sort_keys=True, separators=(",", ":")))


def _load_instance(shape, n, d, triangulation_path):
    """Resolve an instance from either a shape recipe or a triangulation file."""
    if triangulation_path:
        with open(triangulation_path) as fh:
            text = fh.read()
        points = json.loads(text)["points"]
        if not points:
            raise click.ClickException("triangulation file has no points")
        dd = max(max(p) for p in points)
        poly = dilated_simplex(len(points[0]), dd)
        tri = Triangulation.from_json(poly, text)
        return poly, tri
    if shape != "dilated-simplex":
        raise click.ClickException(f"unknown shape {shape!r}")
    if n is None or d is None:
        raise click.ClickException("--n and --d are required without --triangulation")
    return generate_alcove(n, d)


def _make_phase(tri, k, seed, phase_path):
    if phase_path == "trivial-k0":
        return trivial_k0(tri)
    if phase_path:
        with open(phase_path) as fh:
            return RealPhaseStructure.from_json(tri, fh.read())
    n = tri.poly.n
    if k is None:
        raise click.ClickException("--k is required without a phase file")
    if k == 0:
        return trivial_k0(tri)
    if seed is None:
        raise click.ClickException("--seed is required for randomized phases")
    rng = random.Random(seed)
    if k == 1:
        signs = [rng.getrandbits(1) for _ in tri.points]
        return from_sign_distribution(tri, signs)
    if k == n:
        return random_kn(tri, seed)
    choices = enumerate_all(tri, k)
    if not choices:
        raise click.ClickException(f"no valid phase structures for k={k}")
    return rng.choice(choices)


_instance_opts = [
    click.option("--shape", default="dilated-simplex", show_default=True),
    click.option("--n", type=int, default=None),
    click.option("--d", type=int, default=None),
    click.option("--triangulation", "triangulation_path", type=click.Path(),
                 default=None, help="triangulation JSON file instead of a shape"),
]


def instance_options(f):
    for opt in reversed(_instance_opts):
        f = opt(f)
    return f


@click.group()
def main():
    """Combinatorial patchworking: T-manifold invariants and verification."""


@main.command("gen-triangulation")
@instance_options
@click.option("-o", "--output", type=click.Path(), default=None)
def gen_triangulation(shape, n, d, triangulation_path, output):
    """Generate the alcove triangulation of a dilated simplex as JSON."""
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    text = tri.to_json()
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text)


@main.command()
@instance_options
def validate(shape, n, d, triangulation_path):
    """Check a triangulation: unimodular, point-complete, face-to-face."""
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    report = tri.validate()
    _echo_json({"ok": report.ok, "issues": report.issues})
    if not report.ok:
        sys.exit(1)


@main.command()
@instance_options
@click.option("--k", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--phase", "phase_path", default=None,
              help="phase JSON file, or 'trivial-k0'")
@click.option("-o", "--output", type=click.Path(), default=None)
def phase(shape, n, d, triangulation_path, k, seed, phase_path, output):
    """Generate or validate a real phase structure on the k-skeleton."""
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    ph = _make_phase(tri, k, seed, phase_path)
    report = ph.validate()
    if not report.ok:
        _echo_json({"ok": False, "violations": [
            [list(t), s] for t, s in report.violations]})
        sys.exit(1)
    text = ph.to_json()
    if output:
        with open(output, "w") as fh:
            fh.write(text)
        _echo_json({"ok": True, "k": ph.k, "written": output})
    else:
        click.echo(text)


@main.command()
@instance_options
@click.option("--k", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--phase", "phase_path", default=None)
@click.option("--via", type=click.Choice(["cosheaf", "simplicial", "both"]),
              default="both", show_default=True)
def betti(shape, n, d, triangulation_path, k, seed, phase_path, via):
    """Mod-2 Betti numbers of the patchworked manifold."""
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    ph = _make_phase(tri, k, seed, phase_path)
    if not ph.validate():
        raise click.ClickException("invalid phase structure")
    xi = XiPoset(poly, tri)
    out = {"k": ph.k}
    if via in ("cosheaf", "both"):
        out["cosheaf"] = betti_via_cosheaf(xi, ph)
    if via in ("simplicial", "both"):
        out["simplicial"] = betti_via_simplicial(xi, ph)
    if via == "both" and out["cosheaf"] != out["simplicial"]:
        out["agree"] = False
        _echo_json(out)
        sys.exit(1)
    out["betti"] = out.get("cosheaf", out.get("simplicial"))
    _echo_json(out)


@main.command()
@instance_options
@click.option("--k", type=int, required=True)
@click.option("--via", type=click.Choice(["poset", "closed-form", "both"]),
              default="both", show_default=True)
def hodge(shape, n, d, triangulation_path, k, via):
    """Hodge numbers h^{p,q}, by cosheaf homology and/or the closed formulas."""
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    m = poly.n - k
    out = {"k": k, "m": m}
    if via in ("closed-form", "both"):
        out["closed_form"] = hodge_table(poly, tri, k).h
    if via in ("poset", "both"):
        xi = XiPoset(poly, tri)
        table = []
        for p in range(m + 1):
            ranks = hodge_poset(poly, tri, p, k, xi)
            ranks += [0] * (m + 1 - len(ranks))
            table.append(ranks[: m + 1])
        out["poset"] = table
    if via == "both":
        diff = [
            [p, q, out["poset"][p][q], out["closed_form"][p][q]]
            for p in range(m + 1) for q in range(m + 1)
            if out["poset"][p][q] != out["closed_form"][p][q]
        ]
        out["diff"] = diff
        _echo_json(out)
        if diff:
            sys.exit(1)
        return
    _echo_json(out)


@main.command("export-svg")
@instance_options
@click.option("--seed", type=int, default=None)
@click.option("--phase", "phase_path", default=None)
@click.option("-o", "--output", type=click.Path(), required=True)
def export_svg_cmd(shape, n, d, triangulation_path, seed, phase_path, output):
    """Draw a patchworked plane curve (n = 2, k = 1) with its four reflections."""
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    if poly.n != 2:
        raise click.ClickException("svg export needs n = 2")
    ph = _make_phase(tri, 1, seed, phase_path)
    if ph.k != 1:
        raise click.ClickException("svg export needs a k = 1 phase")
    signs = to_sign_distribution(ph)
    export_svg(output, poly, tri, signs)
    _echo_json({"ok": True, "written": output})


@main.command()
@instance_options
@click.option("--k", type=int, required=True)
@click.option("--seed", type=int, default=None)
@click.option("--phase", "phase_path", default=None)
@click.option("--timings", is_flag=True, default=False,
              help="include wall-clock timings (breaks byte-determinism)")
def verify(shape, n, d, triangulation_path, k, seed, phase_path, timings):
    """Run the full verification battery on one instance."""
    t0 = time.monotonic()
    poly, tri = _load_instance(shape, n, d, triangulation_path)
    ph = _make_phase(tri, k, seed, phase_path)
    xi = XiPoset(poly, tri)
    m = poly.n - k
    checks = {}

    report = tri.validate()
    checks["triangulation_valid"] = report.ok
    pr = ph.validate()
    checks["phase_valid"] = pr.ok
    checks["parity_counts_in_0_2"] = pr.all_counts_in_0_2
    checks["poset_thin"] = check_thin(len(xi), xi.grade, xi.leq)

    b_cosheaf = betti_via_cosheaf(xi, ph)
    b_simp = betti_via_simplicial(xi, ph)
    checks["betti_two_routes_agree"] = b_cosheaf == b_simp

    table = hodge_table(poly, tri, k)
    bound_ok, equality = betti_bound_check(poly, tri, k, b_cosheaf)
    checks["betti_bound"] = bound_ok

    chi, sig, chi_eq = euler_and_signature_check(poly, tri, ph, xi, b_cosheaf)
    checks["euler_equals_signature"] = chi_eq

    poset_tables = {}
    hodge_agree = True
    for p in range(m + 1):
        ranks = hodge_poset(poly, tri, p, k, xi)
        ranks += [0] * (m + 1 - len(ranks))
        poset_tables[p] = ranks[: m + 1]
        if poset_tables[p] != table.h[p]:
            hodge_agree = False
    checks["hodge_two_routes_agree"] = hodge_agree

    checks["duality_rank_symmetry"] = all(
        poset_tables[p][q] == poset_tables[m - p][m - q]
        for p in range(m + 1) for q in range(m + 1)
    )
    def _k0_ranks(p):
        ranks = hodge_poset(poly, tri, p, 0, xi)
        ranks += [0] * (m + 1 - len(ranks))
        return ranks

    checks["heredity_below_diagonal"] = all(
        poset_tables[p][q] == _k0_ranks(p)[q]
        for p in range(m + 1) for q in range(m + 1) if p + q < m
    )
    checks["euler_three_way"] = all(
        sum((-1) ** q * poset_tables[p][q] for q in range(m + 1))
        == e_total(poly, tri, k, p)
        == sum(
            (-1) ** xi.grade(i)
            * dim_formula(poly.faces[f].dim, tri.simplices[s].dim, p, k)
            for i, (f, s) in enumerate(xi.elements)
        )
        for p in range(m + 1)
    )
    checks["dim_formula_everywhere"] = all(
        FpkCosheaf(xi, p, k).space_dim(i) == dim_formula(
            poly.faces[f].dim, tri.simplices[s].dim, p, k)
        for p in range(m + 1)
        for i, (f, s) in enumerate(xi.elements)
    )
    checks["fundamental_class_is_cycle"] = omega_boundary_is_zero(xi, k)
    if len(xi) <= PD_SIZE_LIMIT:
        checks["cap_product_duality"] = all(
            verify_pd(xi, k, p, q)
            for p in range(m + 1) for q in range(m + 1)
        )

    out = {
        "instance": {
            "shape": shape if not triangulation_path else "file",
            "n": poly.n,
            "d": max(max(v) for v in poly.vertices),
            "k": k,
            "seed": seed,
            "cell_pairs": len(xi),
        },
        "betti": b_cosheaf,
        "chi": chi,
        "signature": sig,
        "hodge": table.h,
        "bound_ok": bound_ok,
        "equality": equality,
        "checks": checks,
        "ok": all(checks.values()),
    }
    if timings:
        out["elapsed_ms"] = int((time.monotonic() - t0) * 1000)
    _echo_json(out)
    if not out["ok"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
