"""Command-line interface: one binary, batch subcommands, deterministic reports.

Reports are JSON by default ("schema": 1, keys sorted, no timestamps), so two
runs with the same configuration produce byte-identical output. Exit codes:
0 success, 1 a requested check failed (the report is still written), 2 usage
or parse errors, 3 a resource budget was exceeded.

The EQUIDOUBLE_THREADS environment variable sets how many verification
sections of `verify-all` may run concurrently; report assembly is always
single-threaded and ordered, so the output does not depend on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .catalogue import catalogue_list, load_extension, load_group, load_presentation
from .doubles import double_algebra, sector_double
from .dw import (
    DEFAULT_BUDGET,
    TwistHom,
    circle_nerve,
    count_homs,
    presentation_by_name,
    twisted_bundle_groupoid,
    twisted_cech_h1,
)
from .errors import EquidoubleError, NonInvertibleError, ResourceError, UsageError
from .groupoids import groupoid_cardinality
from .groups import extension_to_weak_action
from .hopf import verify_hopf, verify_quasitriangular, verify_ribbon
from .modular import (
    check_equivariant_diagrams,
    s_matrix,
    s_matrix_character_formula,
    simples_of_double,
    trivial_extension,
)
from .orbifold import orbifold_algebra, orbifold_ribbon, psi_check, verify_sector_double
from .scalars import Cyclotomic, Scalar, scalar_eq

SCHEMA = 1
CSV_COMMANDS = ("smatrix", "simples", "sectors", "catalogue")


@dataclass(frozen=True)
class RunConfig:
    """A fully parsed invocation; building one validates budgets and flags."""

    command: str
    group: Optional[str] = None
    extension: Optional[str] = None
    presentation: Optional[str] = None
    monodromy: int = 0
    check_psi: bool = False
    budget_homs: int = DEFAULT_BUDGET
    budget_dim: Optional[int] = None
    sampled: bool = False
    format: str = "json"
    out: Optional[str] = None
    threads: int = 1

    def __post_init__(self):
        if self.budget_homs <= 0:
            raise UsageError("--budget-homs must be positive")
        if self.budget_dim is not None and self.budget_dim <= 0:
            raise UsageError("--budget-dim must be positive")
        if self.threads <= 0:
            raise UsageError("EQUIDOUBLE_THREADS must be positive")
        if self.format == "csv" and self.command not in CSV_COMMANDS:
            raise UsageError(f"csv output is only available for: {', '.join(CSV_COMMANDS)}")


# -- scalar and report encoding -------------------------------------------------


def encode_scalar(x: Scalar) -> object:
    if isinstance(x, Cyclotomic):
        return {"conductor": x.n, "coeffs": [encode_scalar(c) for c in x.coeffs]}
    frac = Fraction(x)
    return f"{frac.numerator}/{frac.denominator}"


def scalar_string(x: Scalar) -> str:
    """Human/CSV form: rationals plain, cyclotomics as c0 + c1*z(n)^1 + ..."""
    if not isinstance(x, Cyclotomic):
        return str(Fraction(x))
    parts = [str(x.coeffs[0])]
    for k in range(1, len(x.coeffs)):
        if x.coeffs[k] != 0:
            parts.append(f"{x.coeffs[k]}*z({x.n})^{k}")
    return " + ".join(parts)


def _render_text(obj: object, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key in sorted(obj, key=str):
            value = obj[key]
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {value}")
        return lines
    if isinstance(obj, list):
        lines = []
        for value in obj:
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {value}")
        return lines
    return [f"{pad}{obj}"]


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        return "\n".join(_render_text(report)) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    raise UsageError(f"unknown format {fmt!r}")


def _render_csv(report: dict) -> str:
    rows = report["csv_rows"]
    return "\n".join(",".join(str(cell) for cell in row) for row in rows) + "\n"


# -- subcommand implementations --------------------------------------------------


def _require(value: Optional[str], flag: str) -> str:
    if value is None:
        raise UsageError(f"{flag} is required for this subcommand")
    return value


def _cmd_dw(config: RunConfig) -> tuple[dict, bool]:
    pres = load_presentation(_require(config.presentation, "--presentation"))
    group = load_group(_require(config.group, "--group"))
    count = count_homs(pres, group, budget=config.budget_homs)
    invariant = Fraction(count, group.order)
    report = {
        "presentation": config.presentation,
        "group": config.group,
        "generators": pres.generators,
        "relations": [list(word) for word in pres.relations],
        "hom_count": count,
        "invariant": encode_scalar(invariant),
    }
    return report, True


def _cmd_double(config: RunConfig) -> tuple[dict, bool]:
    group = load_group(_require(config.group, "--group"))
    d = double_algebra(group)
    checks = dict(verify_hopf(d.hopf, sampled=config.sampled).checks)
    rib = d.ribbon_data()
    checks.update(verify_quasitriangular(rib, sampled=config.sampled).checks)
    checks.update(verify_ribbon(rib, sampled=config.sampled).checks)
    ok = all(checks.values())
    report = {
        "group": config.group,
        "dimension": d.hopf.dim,
        "mode": "sampled" if config.sampled else "full",
        "checks": checks,
        "all_passed": ok,
    }
    return report, ok


def _cmd_jdouble(config: RunConfig) -> tuple[dict, bool]:
    ext = load_extension(_require(config.extension, "--extension"))
    sd = sector_double(ext)
    rep = verify_sector_double(sd, sampled=config.sampled)
    report = {
        "extension": config.extension,
        "dimension": sd.hopf.dim,
        "sectors": ext.J.order,
        "sector_dimensions": [len(ext.fiber(j)) * ext.G.order for j in range(ext.J.order)],
        "mode": rep.mode,
        "checks": dict(rep.checks),
        "all_passed": rep.all_passed(),
    }
    return report, rep.all_passed()


def _cmd_orbifold(config: RunConfig) -> tuple[dict, bool]:
    ext = load_extension(_require(config.extension, "--extension"))
    sd = sector_double(ext)
    ohat = orbifold_algebra(sd)
    checks = dict(verify_hopf(ohat, sampled=config.sampled).checks)
    rib = orbifold_ribbon(sd, ohat)
    checks.update(verify_quasitriangular(rib, sampled=config.sampled).checks)
    checks.update(verify_ribbon(rib, sampled=config.sampled).checks)
    report = {
        "extension": config.extension,
        "dimension": ohat.dim,
        "mode": "sampled" if config.sampled else "full",
        "checks": checks,
    }
    ok = all(checks.values())
    if config.check_psi:
        psi = psi_check(ext)
        report["psi"] = {
            "bijective": psi.bijective,
            "product": psi.product,
            "coproduct": psi.coproduct,
            "rmatrix": psi.rmatrix,
            "twist": psi.twist,
        }
        ok = ok and psi.all_passed
    report["all_passed"] = ok
    return report, ok


def _smatrix_payload(group_ref: str) -> tuple[dict, bool]:
    group = load_group(group_ref)
    traced = s_matrix(group)
    counted = s_matrix_character_formula(group)
    agrees = all(
        scalar_eq(traced.matrix[r, c], counted.matrix[r, c])
        for r in range(traced.matrix.rows)
        for c in range(traced.matrix.cols)
    )
    labels = [f"[{h}]x{row}" for (h, row) in traced.labels]
    invertible = traced.is_invertible()
    symmetric = traced.is_symmetric()
    ok = invertible and symmetric and agrees
    report = {
        "group": group_ref,
        "size": traced.matrix.rows,
        "labels": labels,
        "matrix": [
            [encode_scalar(traced.matrix[r, c]) for c in range(traced.matrix.cols)]
            for r in range(traced.matrix.rows)
        ],
        "invertible": invertible,
        "symmetric": symmetric,
        "character_formula_agrees": agrees,
        "all_passed": ok,
        "csv_rows": [["label"] + labels]
        + [
            [labels[r]] + [scalar_string(traced.matrix[r, c]) for c in range(traced.matrix.cols)]
            for r in range(traced.matrix.rows)
        ],
    }
    return report, ok


def _cmd_smatrix(config: RunConfig) -> tuple[dict, bool]:
    return _smatrix_payload(_require(config.group, "--group"))


def _resolve_simples(config: RunConfig):
    if config.extension is not None:
        ext = load_extension(config.extension)
        source = config.extension
    elif config.group is not None:
        ext = trivial_extension(load_group(config.group))
        source = config.group
    else:
        raise UsageError("need --extension or --group")
    return ext, source


def _cmd_simples(config: RunConfig) -> tuple[dict, bool]:
    ext, source = _resolve_simples(config)
    simples = simples_of_double(ext)
    entries = [
        {
            "label": v.name,
            "dimension": v.dim,
            "sector": v.degree(),
            "grades": list(v.grades),
        }
        for v in simples
    ]
    report = {
        "input": source,
        "count": len(simples),
        "sum_of_squared_dimensions": sum(v.dim * v.dim for v in simples),
        "simples": entries,
        "csv_rows": [["label", "dimension", "sector"]]
        + [[v.name, v.dim, v.degree()] for v in simples],
    }
    return report, True


def _category_sample(ext, config: RunConfig):
    simples = simples_of_double(ext)
    if config.budget_dim is not None:
        simples = [v for v in simples if v.dim <= config.budget_dim]
    if config.sampled and len(simples) > 3:
        picks = sorted({0, len(simples) // 2, len(simples) - 1})
        simples = [simples[i] for i in picks]
    return simples


def _cmd_verify_category(config: RunConfig) -> tuple[dict, bool]:
    ext = load_extension(_require(config.extension, "--extension"))
    sample = _category_sample(ext, config)
    report_obj = check_equivariant_diagrams(ext, sample)
    report = {
        "extension": config.extension,
        "sample_size": len(sample),
        "sampled": config.sampled,
        "diagram_counts": dict(report_obj.counts),
        "failures": [[name, list(labels)] for name, labels in report_obj.failures],
        "all_passed": report_obj.all_passed,
    }
    return report, report_obj.all_passed


def _cmd_verify_all(config: RunConfig) -> tuple[dict, bool]:
    ext = load_extension(_require(config.extension, "--extension"))
    sd = sector_double(ext)

    def section_double() -> dict:
        d = double_algebra(ext.H)
        checks = dict(verify_hopf(d.hopf, sampled=config.sampled).checks)
        rib = d.ribbon_data()
        checks.update(verify_quasitriangular(rib, sampled=config.sampled).checks)
        checks.update(verify_ribbon(rib, sampled=config.sampled).checks)
        return checks

    def section_sector() -> dict:
        return dict(verify_sector_double(sd, sampled=config.sampled).checks)

    def section_psi() -> dict:
        psi = psi_check(ext)
        return {
            "bijective": psi.bijective,
            "product": psi.product,
            "coproduct": psi.coproduct,
            "rmatrix": psi.rmatrix,
            "twist": psi.twist,
        }

    def section_category() -> dict:
        sample = _category_sample(ext, config)
        rep = check_equivariant_diagrams(ext, sample)
        return {
            "sample_size": len(sample),
            "diagram_counts": dict(rep.counts),
            "failures": [[name, list(labels)] for name, labels in rep.failures],
            "all_passed": rep.all_passed,
        }

    def section_modularity() -> dict:
        invertible = s_matrix(ext.H).is_invertible()
        return {"orbifold_modular": invertible, "j_modular_claim": invertible}

    sections: list[tuple[str, Callable[[], dict]]] = [
        ("hopf-axioms", section_double),
        ("j-hopf-axioms", section_sector),
        ("psi-identification", section_psi),
        ("category-diagrams", section_category),
        ("modularity", section_modularity),
    ]
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            futures = [(name, pool.submit(thunk)) for name, thunk in sections]
            results = [(name, future.result()) for name, future in futures]
    else:
        results = [(name, thunk()) for name, thunk in sections]

    def section_ok(payload: dict) -> bool:
        if "all_passed" in payload:
            return bool(payload["all_passed"])
        return all(bool(v) for v in payload.values())

    report = {
        "extension": config.extension,
        "mode": "sampled" if config.sampled else "full",
        "sections": {name: payload for name, payload in results},
        "section_passed": {name: section_ok(payload) for name, payload in results},
    }
    ok = all(report["section_passed"].values())
    report["all_passed"] = ok
    return report, ok


def _cmd_cech(config: RunConfig) -> tuple[dict, bool]:
    ext = load_extension(_require(config.extension, "--extension"))
    if not 0 <= config.monodromy < ext.J.order:
        raise UsageError(f"monodromy must be a sector index in 0..{ext.J.order - 1}")
    wa = extension_to_weak_action(ext)
    nerve = circle_nerve(ext.J, config.monodromy)
    classes = twisted_cech_h1(nerve, wa, budget=config.budget_homs)
    twist_hom = TwistHom(presentation_by_name("circle"), ext.J, (config.monodromy,))
    action, _points = twisted_bundle_groupoid(twist_hom, ext, budget=config.budget_homs)
    orbit_count = len(action.orbits())
    matches = classes.count == orbit_count
    report = {
        "extension": config.extension,
        "monodromy": config.monodromy,
        "nerve": "circle3",
        "class_count": classes.count,
        "representatives": [list(rep) for rep in classes.representatives],
        "sector_groupoid_orbits": orbit_count,
        "matches_sector_groupoid": matches,
    }
    return report, matches


def _cmd_sectors(config: RunConfig) -> tuple[dict, bool]:
    ext = load_extension(_require(config.extension, "--extension"))
    if not 0 <= config.monodromy < ext.J.order:
        raise UsageError(f"monodromy must be a sector index in 0..{ext.J.order - 1}")
    twist_hom = TwistHom(presentation_by_name("circle"), ext.J, (config.monodromy,))
    action, points = twisted_bundle_groupoid(twist_hom, ext, budget=config.budget_homs)
    orbits = action.orbits()
    entries = []
    for orbit in orbits:
        base = orbit[0]
        stab = action.stabilizer(base)
        entries.append(
            {
                "base_point": points[base][0],
                "size": len(orbit),
                "stabilizer_order": len(stab),
            }
        )
    report = {
        "extension": config.extension,
        "monodromy": config.monodromy,
        "point_count": len(points),
        "orbit_count": len(orbits),
        "orbits": entries,
        "cardinality": encode_scalar(groupoid_cardinality(action)),
        "csv_rows": [["base_point", "size", "stabilizer_order"]]
        + [[e["base_point"], e["size"], e["stabilizer_order"]] for e in entries],
    }
    return report, True


def _cmd_catalogue(config: RunConfig) -> tuple[dict, bool]:
    listing = catalogue_list()
    report = {
        "groups": list(listing["groups"]),
        "extensions": list(listing["extensions"]),
        "presentations": list(listing["presentations"]),
        "nerves": list(listing["nerves"]),
        "csv_rows": [["kind", "name"]]
        + [[kind, name] for kind in sorted(listing) for name in listing[kind]],
    }
    return report, True


_COMMANDS: dict[str, Callable[[RunConfig], tuple[dict, bool]]] = {
    "dw": _cmd_dw,
    "double": _cmd_double,
    "jdouble": _cmd_jdouble,
    "orbifold": _cmd_orbifold,
    "smatrix": _cmd_smatrix,
    "simples": _cmd_simples,
    "verify-category": _cmd_verify_category,
    "verify-all": _cmd_verify_all,
    "cech": _cmd_cech,
    "sectors": _cmd_sectors,
    "catalogue": _cmd_catalogue,
}


# -- argument parsing ------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equidouble",
        description="Exact doubles of group extensions: invariants, axiom suites, reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, *, group=False, extension=False, presentation=False, monodromy=False, psi=False):
        p = sub.add_parser(name, help=help_text)
        if group:
            p.add_argument("--group", help="catalogue group name or JSON file path")
        if extension:
            p.add_argument("--extension", help="catalogue extension name or JSON file path")
        if presentation:
            p.add_argument("--presentation", required=True, help="catalogue presentation name or JSON file path")
        if monodromy:
            p.add_argument("--monodromy", type=int, default=0, help="sector index (default 0)")
        if psi:
            p.add_argument("--check-psi", action="store_true", help="also verify the identification with the plain double")
        p.add_argument("--budget-homs", type=int, default=DEFAULT_BUDGET, help="cap on enumeration search spaces")
        p.add_argument("--budget-dim", type=int, default=None, help="skip sample modules above this dimension")
        p.add_argument("--sampled", action="store_true", help="randomized spot checks instead of exhaustive loops")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", default=None, help="write the report to this path instead of stdout")
        return p

    add("dw", "count flat bundles and the normalized invariant", group=True, presentation=True)
    add("double", "axiom suite for the double of a group", group=True)
    add("jdouble", "axiom suite for the graded double of an extension", extension=True)
    add("orbifold", "axiom suite for the crossed product", extension=True, psi=True)
    add("smatrix", "S-matrix of the double of a group", group=True)
    add("simples", "simple modules of the (graded) double", group=True, extension=True)
    add("verify-category", "braiding/twist coherence diagrams on simples", extension=True)
    add("verify-all", "every verification suite for one extension", extension=True)
    add("cech", "cocycle classes over the three-arc circle nerve", extension=True, monodromy=True)
    add("sectors", "twisted-bundle groupoid of the circle", extension=True, monodromy=True)
    add("catalogue", "list built-in groups, extensions, presentations, nerves")
    return parser


def _threads_from_env() -> int:
    raw = os.environ.get("EQUIDOUBLE_THREADS", "1")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"EQUIDOUBLE_THREADS must be an integer, got {raw!r}")


def parse_config(argv: Sequence[str]) -> RunConfig:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    return RunConfig(
        command=ns.command,
        group=getattr(ns, "group", None),
        extension=getattr(ns, "extension", None),
        presentation=getattr(ns, "presentation", None),
        monodromy=getattr(ns, "monodromy", 0),
        check_psi=getattr(ns, "check_psi", False),
        budget_homs=ns.budget_homs if getattr(ns, "budget_homs", None) is not None else DEFAULT_BUDGET,
        budget_dim=getattr(ns, "budget_dim", None),
        sampled=getattr(ns, "sampled", False),
        format=getattr(ns, "format", "json"),
        out=getattr(ns, "out", None),
        threads=_threads_from_env(),
    )


def run(config: RunConfig) -> int:
    """Execute one parsed invocation and write its report."""
    body, ok = _COMMANDS[config.command](config)
    report = {"schema": SCHEMA, "command": config.command}
    report.update(body)
    if config.format != "csv":
        report.pop("csv_rows", None)
    rendered = render_report(report, config.format)
    if config.out is not None:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        config = parse_config(args)
        return run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except NonInvertibleError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except EquidoubleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
