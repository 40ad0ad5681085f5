"""Command-line surface: validation, enumeration, regions, rays, membership,
plots, and corpus generation.

Exit codes: 0 success, 1 domain error (unreadable/invalid input, undersized
field, oversized instance), 2 usage error.  All outputs are deterministic
for fixed inputs, flags and seed; numbers print as exact rationals except
inside SVG, where coordinates are rounded at the final string.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path

from capregion import corpus as corpus_mod
from capregion.exactlp import fmt_rational
from capregion.gk import GKConfig, GKPhaseCapError, SemiGKConfig
from capregion.lincode import (
    FieldSpec,
    enumerate_minimal_partial_solutions,
    enumerate_weight_vectors,
)
from capregion.network import (
    NetworkParseError,
    parse_network,
    rate_upper_bounds,
    validate_network,
)
from capregion.packing import RegionTooLargeError, region_via_vertices
from capregion.polytope import serialize_region
from capregion.reconstruct import ReconstructConfig, ReconstructionError
from capregion.routing import (
    build_routing_polytope,
    exact_region_2d,
    exact_region_via_vertices,
    ray_oracle_exact,
    ray_oracle_gk,
    reconstruct_region,
)
from capregion.semilinear import (
    build_semi_polytope,
    semi_ray_oracle_exact,
    semi_ray_oracle_gk,
    semi_exact_region_2d,
    semi_reconstruct_region,
)
from capregion.steiner import enumerate_minimal_steiner_trees


class DomainError(RuntimeError):
    pass


class UsageError(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: subcommand plus every flag it may read."""

    command: str
    engine: str | None = None            # routing | semilinear | both (plot)
    input_path: str | None = None
    method: str = "exact"                # exact | vertices | rays | gk
    omega: Fraction = Fraction(1, 10)
    field_order: int = 2
    steiner_oracle: str = "exact"        # exact | sp
    rays: int = 64
    out: str | None = None
    q: tuple[Fraction, ...] | None = None
    rate: tuple[Fraction, ...] | None = None
    seed: int = 1
    count: int = 25
    nodes: tuple[int, int] = (4, 8)
    edges: tuple[int, int] = (5, 12)
    messages: int = 2
    caps: tuple[int, int] = (1, 3)

    def __post_init__(self):
        if self.omega <= 0:
            raise UsageError("--omega must be positive")
        if self.method not in ("exact", "vertices", "rays", "gk"):
            raise UsageError(f"unknown method {self.method!r}")
        if self.steiner_oracle not in ("exact", "sp"):
            raise UsageError(f"unknown steiner oracle {self.steiner_oracle!r}")
        from capregion.lincode import is_prime
        if not is_prime(self.field_order):
            raise UsageError(f"--field {self.field_order} is not prime")
        if self.rays < 2:
            raise UsageError("--rays must be at least 2")


def _load_network(config: RunConfig, require_valid: bool = True):
    if not config.input_path:
        raise UsageError("missing network file argument")
    try:
        text = Path(config.input_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {config.input_path}: {exc.strerror}")
    try:
        net = parse_network(text)
    except NetworkParseError as exc:
        raise DomainError(f"{config.input_path}: {exc}")
    if require_valid:
        report = validate_network(net)
        if not report.ok:
            raise DomainError(
                f"{config.input_path}: invalid network: {report.violations[0]}")
    return net


def _field(config: RunConfig) -> FieldSpec:
    return FieldSpec(config.field_order)


def _gk_cfg(config: RunConfig) -> GKConfig:
    oracle = "exact" if config.steiner_oracle == "exact" else "shortest_paths"
    return GKConfig(omega=config.omega, steiner_oracle=oracle)


def _run_validate(config: RunConfig, out) -> int:
    net = _load_network(config, require_valid=False)
    report = validate_network(net)
    if report.ok:
        print("ok", file=out)
        return 0
    for violation in report.violations:
        print(violation, file=out)
    return 1


def _run_trees(config: RunConfig, out) -> int:
    net = _load_network(config)
    for i, message in enumerate(net.messages):
        for tree in enumerate_minimal_steiner_trees(net, i):
            print(f"{message.name} {','.join(str(e) for e in tree.edges)}", file=out)
    return 0


def _run_weights(config: RunConfig, out) -> int:
    net = _load_network(config)
    spec_field = _field(config)
    if spec_field.q < net.alphabet_size:
        raise DomainError(f"field order {spec_field.q} below alphabet size")
    for w in enumerate_weight_vectors(net, spec_field):
        count = len(enumerate_minimal_partial_solutions(net, w, spec_field))
        print("".join(str(b) for b in w), count, file=out)
    return 0


def _build(config: RunConfig, engine: str):
    net = _load_network(config)
    if engine == "routing":
        return build_routing_polytope(net)
    spec_field = _field(config)
    if spec_field.q < net.alphabet_size:
        raise DomainError(f"field order {spec_field.q} below alphabet size")
    return build_semi_polytope(net, spec_field)


def _run_region(config: RunConfig, out) -> int:
    spec = _build(config, config.engine)
    routing = config.engine == "routing"
    if spec.net.n_messages > 2 and config.method in ("exact", "vertices", "rays"):
        raise DomainError("exact region descriptions cover 1 or 2 messages")
    if config.method == "exact":
        region = exact_region_2d(spec) if routing else semi_exact_region_2d(spec)
    elif config.method == "vertices":
        region = (exact_region_via_vertices(spec) if routing
                  else region_via_vertices(spec.system))
    elif config.method == "rays":
        result = (reconstruct_region(spec) if routing
                  else semi_reconstruct_region(spec))
        region = result.region
    else:  # gk: uncertified sketch plus the probed cloud
        cfg = ReconstructConfig(mode="cloud", rays=config.rays)
        if routing:
            result = reconstruct_region(spec, cfg, _gk_cfg(config))
        else:
            result = semi_reconstruct_region(spec, cfg,
                                             SemiGKConfig(omega=config.omega))
        print("# uncertified sketch; boundary lies within per-point brackets",
              file=out)
        print(serialize_region(result.region), end="", file=out)
        for direction, ans in result.cloud:
            point = (ans.lam * direction[0], ans.lam * direction[1])
            print("point", fmt_rational(point[0]), fmt_rational(point[1]),
                  "bracket", fmt_rational(ans.bracket[0]),
                  fmt_rational(ans.bracket[1]), file=out)
        return 0
    print(serialize_region(region), end="", file=out)
    return 0


def _run_ray(config: RunConfig, out) -> int:
    if config.q is None:
        raise UsageError("ray needs --q")
    spec = _build(config, config.engine)
    routing = config.engine == "routing"
    try:
        if config.method == "gk":
            ans = (ray_oracle_gk(spec, config.q, _gk_cfg(config)) if routing
                   else semi_ray_oracle_gk(spec, config.q,
                                           SemiGKConfig(omega=config.omega)))
        else:
            ans = (ray_oracle_exact(spec, config.q) if routing
                   else semi_ray_oracle_exact(spec, config.q))
    except ValueError as exc:
        raise DomainError(str(exc))
    print(f"lambda = {fmt_rational(ans.lam)}", file=out)
    if ans.bracket is not None:
        print(f"bracket = [{fmt_rational(ans.bracket[0])},"
              f" {fmt_rational(ans.bracket[1])}]", file=out)
    for j, amount in ans.packing:
        edges = ",".join(str(e) for e in spec.system.columns[j].edges)
        print(f"pack {j} {fmt_rational(amount)} edges {edges}", file=out)
    return 0


def _run_member(config: RunConfig, out) -> int:
    if config.rate is None:
        raise UsageError("member needs --rate")
    spec = _build(config, config.engine)
    if any(v < 0 for v in config.rate):
        print("no", file=out)
        return 0
    if all(v == 0 for v in config.rate):
        print("yes", file=out)
        return 0
    # down-closed region: r is a member iff the boundary scale along r is >= 1
    try:
        ans = (ray_oracle_exact(spec, config.rate) if config.engine == "routing"
               else semi_ray_oracle_exact(spec, config.rate))
    except ValueError as exc:
        raise DomainError(str(exc))
    print("yes" if ans.lam >= 1 else "no", file=out)
    return 0


def _boundary_points(config: RunConfig, engine: str):
    spec = _build(config, engine)
    n = config.rays
    rows = []
    for j in range(n):
        direction = (Fraction(n - 1 - j), Fraction(j))
        oracle = (ray_oracle_exact if engine == "routing"
                  else semi_ray_oracle_exact)
        ans = oracle(spec, direction)
        point = (ans.lam * direction[0], ans.lam * direction[1])
        rows.append((direction, ans.lam, point))
    return spec, rows


_SVG_STYLE = {"routing": 'fill="none" stroke="#1f77b4" stroke-width="2"',
              "semilinear": 'fill="none" stroke="#d62728" stroke-width="2"'
                            ' stroke-dasharray="6 3"'}


def _svg(curves, bound: Fraction) -> str:
    size, margin = 440, 20
    span = size - 2 * margin
    gmax = max(float(bound), 1e-9)

    def px(x: Fraction) -> float:
        return margin + float(x) / gmax * span

    def py(y: Fraction) -> float:
        return size - margin - float(y) / gmax * span

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}"'
             f' width="{size}" height="{size}">',
             f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin}"'
             f' y2="{size - margin}" stroke="#000" stroke-width="1"/>',
             f'<line x1="{margin}" y1="{size - margin}" x2="{margin}"'
             f' y2="{margin}" stroke="#000" stroke-width="1"/>',
             f'<text x="{size - margin}" y="{size - 4}" font-size="11"'
             f' text-anchor="end">{float(bound):.6f}</text>',
             f'<text x="4" y="{margin}" font-size="11">{float(bound):.6f}</text>']
    for engine, points in curves:
        coords = " ".join(f"{px(x):.6f},{py(y):.6f}" for x, y in points)
        lines.append(f'<polyline points="{coords}" {_SVG_STYLE[engine]}/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _run_plot(config: RunConfig, out) -> int:
    if not config.out:
        raise UsageError("plot needs --out PATH (.svg or .csv)")
    engines = ["routing", "semilinear"] if config.engine == "both" \
        else [config.engine]
    curves = []
    csv_rows = []
    bound = Fraction(0)
    for engine in engines:
        spec, rows = _boundary_points(config, engine)
        bound = max(bound, *rate_upper_bounds(spec.net))
        curves.append((engine, [p for _, _, p in rows]))
        for direction, lam, point in rows:
            csv_rows.append((engine, direction, lam, point))
    path = Path(config.out)
    if path.suffix == ".csv":
        header = "qx,qy,lambda,rx,ry"
        body = []
        for engine, direction, lam, point in csv_rows:
            cells = [fmt_rational(direction[0]), fmt_rational(direction[1]),
                     fmt_rational(lam), fmt_rational(point[0]),
                     fmt_rational(point[1])]
            if config.engine == "both":
                cells.insert(0, engine)
            body.append(",".join(cells))
        if config.engine == "both":
            header = "region," + header
        text = header + "\n" + "\n".join(body) + "\n"
    elif path.suffix == ".svg":
        text = _svg(curves, bound)
    else:
        raise UsageError(f"--out must end in .svg or .csv, got {path.suffix!r}")
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot write {path}: {exc.strerror}")
    print(f"wrote {path}", file=out)
    return 0


def _run_corpus(config: RunConfig, out) -> int:
    if not config.out:
        raise UsageError("corpus needs --out DIR")
    spec = corpus_mod.CorpusSpec(count=config.count, nodes=config.nodes,
                                 edges=config.edges, messages=config.messages,
                                 capacities=config.caps, seed=config.seed)
    try:
        files = corpus_mod.gen_corpus(spec)
    except corpus_mod.CorpusError as exc:
        raise DomainError(str(exc))
    directory = Path(config.out)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for name, text in files:
            (directory / name).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot write corpus: {exc.strerror}")
    for name, _ in files:
        print(directory / name, file=out)
    return 0


_HANDLERS = {
    "validate": _run_validate,
    "trees": _run_trees,
    "weights": _run_weights,
    "region": _run_region,
    "ray": _run_ray,
    "member": _run_member,
    "plot": _run_plot,
    "corpus": _run_corpus,
}


def run(config: RunConfig, out=None) -> int:
    """Execute a validated configuration; returns the exit status."""
    out = out if out is not None else sys.stdout
    return _HANDLERS[config.command](config, out)


def _rational_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected rationals, got {text!r}")


def _int_range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        return (int(lo), int(hi if hi else lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capregion",
        description="capacity regions of capacitated networks")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, engines=None, net=True):
        if engines:
            p.add_argument("engine", choices=engines)
        p.add_argument("--method", default="exact",
                       choices=["exact", "vertices", "rays", "gk"])
        p.add_argument("--omega", type=Fraction, default=Fraction(1, 10))
        p.add_argument("--field", type=int, default=2, dest="field_order")
        p.add_argument("--steiner-oracle", default="exact",
                       choices=["exact", "sp"], dest="steiner_oracle")
        p.add_argument("--rays", type=int, default=64)
        if net:
            p.add_argument("net", help="network file")

    sub.add_parser("validate").add_argument("net")
    sub.add_parser("trees").add_argument("net")
    weights = sub.add_parser("weights")
    weights.add_argument("--field", type=int, default=2, dest="field_order")
    weights.add_argument("net")

    add_common(sub.add_parser("region"), engines=["routing", "semilinear"])
    ray = sub.add_parser("ray")
    ray.add_argument("--q", type=_rational_list, required=True)
    add_common(ray, engines=["routing", "semilinear"])
    member = sub.add_parser("member")
    member.add_argument("--rate", type=_rational_list, required=True)
    add_common(member, engines=["routing", "semilinear"])
    plot = sub.add_parser("plot")
    plot.add_argument("--out", required=True)
    add_common(plot, engines=["routing", "semilinear", "both"])

    corpus = sub.add_parser("corpus")
    corpus.add_argument("--out", required=True)
    corpus.add_argument("--seed", type=int, default=1)
    corpus.add_argument("--count", type=int, default=25)
    corpus.add_argument("--nodes", type=_int_range, default=(4, 8))
    corpus.add_argument("--edges", type=_int_range, default=(5, 12))
    corpus.add_argument("--messages", type=int, default=2)
    corpus.add_argument("--caps", type=_int_range, default=(1, 3))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {f for f in RunConfig.__dataclass_fields__}
    data = {"command": args.command}
    for key, value in vars(args).items():
        if key in fields and value is not None:
            data[key] = value
    if getattr(args, "net", None):
        data["input_path"] = args.net
    return RunConfig(**data)


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = config_from_args(args)
        return run(config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, RegionTooLargeError, ReconstructionError,
            GKPhaseCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
