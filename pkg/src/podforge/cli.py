"""Command-line interface: model construction, invariants, pod constructions,
duality transport, verification, and the claim-reproduction table.

All randomness flows from the --seed flag through seeded generators, so equal
invocations produce byte-identical output files.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .fields import QQ, field_from_descriptor
from .groebner import hilbert_data, ideal_from_json, ideal_to_json
from .models import MODEL_BUILDERS, Leg
from .duality import FORMS, LinearSubspace, dual_space
from . import constructions, verify

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _write_json(path, data):
    text = json.dumps(data, indent=2, sort_keys=True)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def cmd_model(args) -> int:
    field = field_from_descriptor(args.field)
    builder = MODEL_BUILDERS.get(args.name)
    if builder is None:
        print(f"unknown model {args.name!r}; choose from {sorted(MODEL_BUILDERS)}", file=sys.stderr)
        return EXIT_USAGE
    ideal = builder(field)
    _write_json(args.out, ideal_to_json(ideal))
    return EXIT_OK


def cmd_invariants(args) -> int:
    field = field_from_descriptor(args.field)
    builder = MODEL_BUILDERS.get(args.model)
    if builder is None:
        print(f"unknown model {args.model!r}; choose from {sorted(MODEL_BUILDERS)}", file=sys.stderr)
        return EXIT_USAGE
    hd = hilbert_data(builder(field))
    line = f"dim {hd.dimension} deg {hd.degree}"
    if hd.arithmetic_genus is not None:
        line += f" genus {hd.arithmetic_genus}"
    print(line)
    return EXIT_OK


def _legs_from_pod_json(data, field):
    base = data["base"]
    platform = data["platform"]
    d2s = data["lengths_squared"]
    if not (len(base) == len(platform) == len(d2s)):
        raise ValueError("base, platform and lengths_squared must have equal length")
    legs = []
    for a, b, d2 in zip(base, platform, d2s):
        legs.append(
            Leg(
                tuple(field.of(Fraction(str(c))) for c in a),
                tuple(field.of(Fraction(str(c))) for c in b),
                field.of(Fraction(str(d2))),
                field,
            )
        )
    return legs


def _bundle_to_json(bundle) -> dict:
    seed = bundle.seed
    return {
        "kind": "infinity",
        "field": seed.field.descriptor,
        "rng_seed": seed.rng_seed,
        "bound": seed.bound,
        "seed_forms": {
            "L": [str(f) for f in seed.L],
            "U": str(seed.U),
            "P": [str(f) for f in seed.P],
            "F": str(seed.F),
        },
        "certification": dict(bundle.certification),
        "config_ideal": ideal_to_json(bundle.config_ideal),
        "leg_ideal_full": ideal_to_json(bundle.leg_ideal_full),
        "leg_ideal_sym": ideal_to_json(bundle.leg_ideal_sym),
        "config_span_forms": [[str(c) for c in v] for v in bundle.config_span_forms],
        "leg_span_points": [[str(c) for c in v] for v in bundle.leg_span_points],
    }


def cmd_construct(args) -> int:
    field = field_from_descriptor(args.field)
    try:
        if args.what == "infinity":
            bundle = constructions.create_infinity_pod(
                args.seed, field, bound=args.bound, retries=args.retries
            )
            _write_json(args.out, _bundle_to_json(bundle))
        elif args.what == "duporcq":
            legs = _legs_from_pod_json(_load_json(getattr(args, "legs")), field)
            sixth = constructions.duporcq_sixth_leg(legs)
            _write_json(
                args.out,
                {
                    "kind": "duporcq_sixth_leg",
                    "a": [str(c) for c in sixth.a],
                    "b": [str(c) for c in sixth.b],
                    "d2": str(sixth.d2),
                },
            )
        elif args.what == "hexapod":
            legs = _legs_from_pod_json(_load_json(getattr(args, "legs")), field)
            curve = constructions.hexapod_leg_curve(legs)
            hd = hilbert_data(curve)
            out = ideal_to_json(curve)
            out["certification"] = {"dim": hd.dimension, "deg": hd.degree}
            _write_json(args.out, out)
        elif args.what == "cubic":
            bundle = constructions.cubic_line_symmetric(
                args.seed, field, bound=args.bound, retries=args.retries
            )
            pencil = constructions.symmetroid_pencil(bundle)
            _write_json(
                args.out,
                {
                    "kind": "cubic_line_symmetric",
                    "field": field.descriptor,
                    "rng_seed": args.seed,
                    "certification": dict(bundle.certification),
                    "leg_ideal": ideal_to_json(bundle.leg_ideal),
                    "config_ideal": ideal_to_json(bundle.config_ideal),
                    "symmetroid": {
                        "H": str(pencil.H),
                        "node_scheme_degree": pencil.node_scheme_degree,
                        "rational_nodes": [[str(c) for c in nd] for nd in pencil.nodes],
                    },
                },
            )
        elif args.what == "conic":
            rng = random.Random(args.seed)
            fc = [[rng.randint(-args.bound, args.bound) for _ in range(3)] for _ in range(3)]
            gc = [[rng.randint(-args.bound, args.bound) for _ in range(3)] for _ in range(3)]
            pod = constructions.conic_product_legs(fc, gc, field, random.Random(args.seed + 1))
            _write_json(
                args.out,
                {
                    "kind": "conic_product",
                    "field": field.descriptor,
                    "rng_seed": args.seed,
                    "certification": dict(pod.certification),
                    "leg_ideal": ideal_to_json(pod.leg_ideal),
                    "config_ideal": ideal_to_json(pod.config_ideal),
                },
            )
        else:
            return EXIT_USAGE
    except constructions.DegenerateSeedError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    return EXIT_OK


def cmd_dual(args) -> int:
    form = FORMS.get(args.form)
    if form is None:
        print(f"unknown form {args.form!r}; choose from {sorted(FORMS)}", file=sys.stderr)
        return EXIT_USAGE
    form = form()
    data = _load_json(getattr(args, "in"))
    field = field_from_descriptor(data.get("field", "q"))
    space = LinearSubspace(
        tuple(data["ambient"]),
        data["kind"],
        tuple(tuple(field.of(Fraction(str(c))) for c in v) for v in data["basis"]),
        field,
    )
    side = "left" if tuple(data["ambient"]) == form.left_names else "right"
    out = dual_space(space, form, side)
    _write_json(
        args.out,
        {
            "field": field.descriptor,
            "ambient": list(out.ambient),
            "kind": out.kind,
            "basis": [[str(c) for c in v] for v in out.basis],
        },
    )
    return EXIT_OK


def _bundle_from_json(data):
    field = field_from_descriptor(data["field"])
    seed = constructions.draw_seed(data["rng_seed"], field, data.get("bound", 10))
    config = ideal_from_json(data["config_ideal"])
    leg_full = ideal_from_json(data["leg_ideal_full"])
    leg_sym = ideal_from_json(data["leg_ideal_sym"])
    span_forms = tuple(
        tuple(field.of(Fraction(str(c))) for c in v) for v in data["config_span_forms"]
    )
    span_points = tuple(
        tuple(field.of(Fraction(str(c))) for c in v) for v in data["leg_span_points"]
    )
    return constructions.InfinityPodBundle(
        seed=seed,
        config_ideal=config,
        leg_ideal_full=leg_full,
        leg_ideal_sym=leg_sym,
        config_span_forms=span_forms,
        leg_span_points=span_points,
        certification=data.get("certification", {}),
    )


def cmd_verify(args) -> int:
    data = _load_json(args.bundle)
    if data.get("kind") != "infinity":
        print("verify currently handles infinity bundles", file=sys.stderr)
        return EXIT_USAGE
    bundle = _bundle_from_json(data)
    field = bundle.seed.field
    if args.mode == "exact":
        if field is QQ:
            print("exact verification runs over a finite field bundle", file=sys.stderr)
            return EXIT_USAGE
        rng = random.Random(args.seed)
        legs = verify.sample_curve_points(bundle.leg_ideal_full, max(5, args.samples // 5), rng)
        configs = _fp_configs(bundle, max(5, args.samples // 5))
        configs = [(c, field) for c in configs]
        leg_pts = [(pt, field) for pt in legs]
        report = verify.check_pod(
            configs, leg_pts, mode="exact", pod_id=f"seed{bundle.seed.rng_seed}",
            certification=bundle.certification,
        )
    else:
        cfgs = verify.real_configurations(bundle.seed, max(10, args.samples // 2))
        legs = verify.real_legs(bundle, max(5, args.samples // 5))
        report = verify.check_pod(
            cfgs, legs, mode="float", tol=args.tol, pod_id=f"seed{bundle.seed.rng_seed}",
            certification=bundle.certification,
        )
    _write_json(args.out, report.to_json())
    _print_report(report)
    return EXIT_OK if report.ok else EXIT_VERIFICATION_FAILED


def _fp_configs(bundle, count):
    """Exact configuration points via the quartic parametrization."""
    from .models import euler_rho, rho_isometry_point

    seed = bundle.seed
    field = seed.field
    quarter = field.div(field.one, field.of(4))
    rho = euler_rho(seed.P[0], seed.P[1], seed.P[2], seed.U.scale(quarter))
    out = []
    p = field.p
    for e2 in range(p):
        for e1 in range(p):
            if field.is_zero(seed.F.evaluate([e1, e2, 1])):
                out.append(rho_isometry_point(rho, [e1, e2, 1]).coords)
                if len(out) >= count:
                    return out
    return out


def _print_report(report):
    print(f"pod {report.pod_id}: mode={report.mode} pairs={len(report.residuals)}")
    for key, val in sorted(report.certification.items()):
        print(f"  certification {key}: {val}")
    if report.mode == "exact":
        print(f"  exact residuals all zero: {report.exact_zero}")
    else:
        print(f"  max |residual| = {report.max_abs:.3e} (tol {report.tol})")
    print("  PASS" if report.ok else "  FAIL")


def cmd_reproduce(args) -> int:
    from . import acceptance

    results = acceptance.run_all(
        fast=args.fast, seed=args.seed, samples=args.samples, tol=args.tol
    )
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"  [{status}] {r.name:<{width}}  {r.detail}  ({r.seconds:.1f}s)")
        if not r.ok:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} claims reproduced")
    return EXIT_OK if failed == 0 else EXIT_VERIFICATION_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="podforge",
        description="Exact construction and certification of mobile infinity-pods.",
    )
    ap.add_argument("--threads", type=int, default=None, help="cap internal parallelism (PODFORGE_THREADS)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="emit a variety ideal as JSON")
    p.add_argument("name")
    p.add_argument("--field", default="q")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("invariants", help="dimension/degree(/genus) of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--field", default="fp:101")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("construct", help="run a pod construction")
    p.add_argument("what", choices=["infinity", "duporcq", "hexapod", "cubic", "conic"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="fp:101")
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--retries", type=int, default=8)
    p.add_argument("--legs", help="pod JSON with base/platform/lengths_squared")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("dual", help="transport a subspace across a sphere pairing")
    p.add_argument("--form", required=True)
    p.add_argument("--in", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", help="check a bundle's sphere conditions")
    p.add_argument("bundle")
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="run the acceptance suite")
    p.add_argument("--fast", action="store_true", help="reduced seed counts for a quick pass")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_reproduce)

    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.threads is not None:
        os.environ["PODFORGE_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except constructions.DegenerateSeedError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (verify.SamplingError, constructions.CertificationError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
