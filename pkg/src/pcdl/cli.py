"""Command-line front end.

Every subcommand is a thin wrapper over a library call: inputs are JSON
files holding posets, lattices, or maps (auto-detected by shape), and
reports are emitted as JSON with a format tag, as plain text, or as DOT
where a diagram makes sense. Exit codes: 0 for success or a positive
verdict, 1 for a negative verdict, 2 for an inconclusive search, 3 for
bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .algebras import (PcdLattice, is_p_morphism, make_pcdl,
                       p_morphism_failure, pcdl_from_abstract, star_homs,
                       variety_index)
from .amalgamation import (extension_property_bounded, forbidden_images,
                           is_amalgamation_base_finite, lift_through)
from .catalog import catalog
from .congruences import (dual_congruence, enumerate_congruences,
                          is_congruence_extensile_bounded, quotient)
from .duality import AbstractLattice, dual_space
from .posets import OrderMap, Poset, bits, classify_map
from .qmodel import (build_quotient_model, check_lift_cases,
                     divergence_report, verify_collapse, verify_separation)

FORMAT_TAG = "pcdl/1"


class CliInputError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise CliInputError(str(e))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CliInputError("%s: line %d column %d: %s"
                            % (path, e.lineno, e.colno, e.msg))


def _load_poset(path: str) -> Poset:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "covers" not in obj:
        raise CliInputError("%s: expected a poset object with elements "
                            "and covers" % path)
    return Poset.from_dict(obj)


def _load_algebra(path: str):
    """Returns (algebra, labels, to_rep) for a poset or lattice file.

    to_rep translates positions of the input lattice to positions of the
    up-set representation; it is None when the input was already a poset.
    """
    obj = _load_json(path)
    if not isinstance(obj, dict):
        raise CliInputError("%s: expected a JSON object" % path)
    if "covers" in obj:
        alg = make_pcdl(Poset.from_dict(obj))
        return alg, list(alg.labels), None
    if "joins" in obj and "meets" in obj:
        lat = AbstractLattice.from_dict(obj)
        alg, unit = pcdl_from_abstract(lat)
        return alg, list(lat.labels), list(unit.table)
    raise CliInputError("%s: expected a poset (covers) or a lattice "
                        "(joins and meets)" % path)


def _load_map(path: str) -> OrderMap:
    obj = _load_json(path)
    if not isinstance(obj, dict) or \
            not {"source", "target", "map"} <= set(obj):
        raise CliInputError("%s: expected an object with source, target "
                            "and map" % path)
    src = Poset.from_dict(obj["source"])
    tgt = Poset.from_dict(obj["target"])
    return OrderMap.from_labels(src, tgt, obj["map"])


def _lattice_order_poset(lat) -> Poset:
    pairs = [(lat.labels[i], lat.labels[j])
             for i in range(lat.size) for j in range(lat.size)
             if i != j and lat.leq(i, j)]
    return Poset.from_covers(list(lat.labels), pairs)


def _hom_label_maps(homs, labels_s, to_rep_s, labels_t, to_rep_t):
    out = []
    for h in homs:
        if to_rep_s is None and to_rep_t is None:
            out.append({h.source.labels[i]: h.target.labels[h.table[i]]
                        for i in range(h.source.size)})
            continue
        rep_s = to_rep_s or list(range(h.source.size))
        inv_t = {}
        if to_rep_t is None:
            inv_t = {i: i for i in range(h.target.size)}
        else:
            inv_t = {rep: i for i, rep in enumerate(to_rep_t)}
        out.append({labels_s[i]: labels_t[inv_t[h.table[rep_s[i]]]]
                    for i in range(len(labels_s))})
    return out


def _render_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)):
                lines.append("%s%s:" % (pad, k))
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, v))
        return "\n".join(lines)
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append("%s-" % pad)
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append("%s- %s" % (pad, v))
        return "\n".join(lines) if lines else "%s(empty)" % pad
    return "%s%s" % (pad, value)


def _emit(args, payload, dot_text=None) -> None:
    if dot_text is not None:
        out = dot_text
    else:
        payload["format"] = FORMAT_TAG
        if getattr(args, "seed", None) is not None:
            payload["seed"] = args.seed
        if args.format == "json":
            out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        else:
            out = _render_text(payload) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _cmd_dual(args) -> int:
    obj = _load_json(args.infile)
    if not isinstance(obj, dict):
        raise CliInputError("%s: expected a JSON object" % args.infile)
    if "covers" in obj:
        poset = Poset.from_dict(obj)
        lat = make_pcdl(poset).lattice.to_abstract()
        if args.dot:
            _emit(args, {}, _lattice_order_poset(lat).to_dot("dual"))
            return 0
        _emit(args, dict(lat.to_dict()))
        return 0
    if "joins" in obj and "meets" in obj:
        lat = AbstractLattice.from_dict(obj)
        poset = dual_space(lat)
        if args.dot:
            _emit(args, {}, poset.to_dot("dual"))
            return 0
        _emit(args, dict(poset.to_dict()))
        return 0
    raise CliInputError("%s: expected a poset (covers) or a lattice "
                        "(joins and meets)" % args.infile)


def _cmd_check_pspace_map(args) -> int:
    f = _load_map(args.infile)
    failure = p_morphism_failure(f)
    payload = {
        "classification": classify_map(f),
        "p_morphism": failure is None,
        "onto": f.is_onto(),
        "failure": failure,
    }
    _emit(args, payload)
    return 0 if failure is None else 1


def _cmd_star_homs(args) -> int:
    A, labels_s, rep_s = _load_algebra(args.src)
    B, labels_t, rep_t = _load_algebra(args.dst)
    homs = star_homs(A, B)
    if args.onto:
        homs = [h for h in homs if h.is_onto()]
    payload = {
        "count": len(homs),
        "homs": _hom_label_maps(homs, labels_s, rep_s, labels_t, rep_t),
    }
    _emit(args, payload)
    return 0 if homs else 1


def _cmd_variety_index(args) -> int:
    A, _, _ = _load_algebra(args.infile)
    _emit(args, {"variety_index": variety_index(A)})
    return 0


def _cmd_congruences(args) -> int:
    A, _, _ = _load_algebra(args.infile)
    thetas = enumerate_congruences(A.base, args.bound)
    payload = {
        "count": len(thetas),
        "congruences": [{"erased": list(t.labels())} for t in thetas],
    }
    _emit(args, payload)
    return 0


def _cmd_quotient(args) -> int:
    A, _, _ = _load_algebra(args.infile)
    erased = [s for s in args.by.split(",") if s]
    theta = dual_congruence(A.base, erased)
    q = quotient(A, theta)
    payload = {
        "algebra": q.algebra.lattice.to_abstract().to_dict(),
        "projection": q.projection.map_labels(),
    }
    _emit(args, payload)
    return 0


def _cmd_extensile(args) -> int:
    A, _, _ = _load_algebra(args.infile)
    res = is_congruence_extensile_bounded(A, args.n, args.bound,
                                          max_instances=args.max_instances)
    payload = {
        "verdict": res.verdict,
        "instances": res.instances,
        "bound": res.bound,
        "witness": None,
    }
    if res.witness is not None:
        Y, gamma, theta = res.witness
        payload["witness"] = {
            "poset": Y.to_dict(),
            "gamma": gamma.map_labels(),
            "erased": list(theta.labels()),
        }
    _emit(args, payload)
    if res.verdict == "yes":
        return 0
    return 2 if res.verdict == "inconclusive" else 1


def _cmd_amalgam(args) -> int:
    A, _, _ = _load_algebra(args.infile)
    verdict = is_amalgamation_base_finite(A, args.n)
    payload = {
        "is_base": verdict.is_base,
        "forbidden_is": list(verdict.forbidden),
        "variety_index": variety_index(A),
        "witnesses": {str(i): w.map_labels()
                      for i, w in verdict.witnesses.items()},
    }
    code = 0 if verdict.is_base else 1
    if args.oracle:
        bound = args.bound if args.bound is not None else A.base.n + 3
        res = extension_property_bounded(A, args.n, bound, jobs=args.jobs)
        payload["oracle"] = res.verdict
        payload["oracle_instances"] = res.instances
        payload["oracle_bound"] = res.bound
        if res.verdict == "inconclusive" and code == 0:
            code = 2
    _emit(args, payload)
    return code


def _cmd_lift(args) -> int:
    gamma = _load_map(args.gamma)
    alpha = _load_map(args.alpha)
    beta = lift_through(gamma, alpha)
    payload = {
        "found": beta is not None,
        "beta": beta.map_labels() if beta is not None else None,
    }
    _emit(args, payload)
    return 0 if beta is not None else 1


def _qmodel_dot(model) -> str:
    lines = ["digraph qmodel {", "  rankdir=BT;"]
    for poset, prefix, title in ((model.total, "t", "big poset"),
                                 (model.quotient, "q", "quotient")):
        lines.append("  subgraph cluster_%s {" % prefix)
        lines.append('    label="%s";' % title)
        for i, lab in enumerate(poset.labels):
            lines.append('    %s%d [label="%s"];' % (prefix, i, lab))
        for i in range(poset.n):
            for j in bits(poset.covers_up[i]):
                lines.append("    %s%d -> %s%d;" % (prefix, i, prefix, j))
        lines.append("  }")
    for i in range(model.total.n):
        lines.append("  t%d -> q%d [style=dashed, constraint=false];"
                     % (i, model.collapse(i)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_q_model(args) -> int:
    model = build_quotient_model(args.N, args.m)
    if args.dot:
        _emit(args, {}, _qmodel_dot(model))
        return 0
    payload = {
        "full_fans": model.full_fans,
        "merged_fans": model.merged_fans,
        "sizes": {"total": model.total.n, "quotient": model.quotient.n},
        "collapse": model.collapse.map_labels(),
    }
    which = args.verify
    ok = True
    if which in ("all", "collapse"):
        rep = verify_collapse(model)
        ok = ok and rep.passed
        payload["collapse_check"] = {
            "passed": rep.passed,
            "points_checked": len(rep.entries),
            "component_embeddings": [list(e)
                                     for e in rep.component_embeddings],
        }
    if which in ("all", "separation"):
        rep = verify_separation(model)
        ok = ok and rep.passed
        payload["separation_check"] = {
            "passed": rep.passed,
            "separation_checks": rep.separation_checks,
            "disconnected_pairs": rep.disconnected_pairs,
            "downset_formula_checks": rep.downset_formula_checks,
            "vacuous": rep.vacuous,
        }
    if which in ("all", "lift"):
        rep = check_lift_cases(model, args.bound)
        ok = ok and not rep.failures
        payload["lift_check"] = {
            "case_counts": rep.case_counts,
            "failures": len(rep.failures),
            "uncovered": rep.uncovered,
            "instances": rep.instances,
            "bound": rep.bound,
        }
    if which in ("all", "divergence"):
        rep = divergence_report(model, args.bound)
        ok = ok and not rep.lift.failures
        payload["divergence"] = {
            "total_forbidden": list(rep.total_forbidden),
            "quotient_forbidden": list(rep.quotient_forbidden),
            "diverges": rep.diverges,
            "text": rep.text,
        }
    _emit(args, payload)
    return 0 if ok else 1


def _cmd_catalog(args) -> int:
    rows = catalog(args.max_points, args.n, oracle=args.oracle,
                   bound=args.bound, jobs=args.jobs)
    _emit(args, {"max_points": args.max_points, "n": args.n, "rows": rows})
    return 0


def _add_common(sp) -> None:
    sp.add_argument("--format", choices=["json", "text"], default="json",
                    help="report format (default json)")
    sp.add_argument("--out", help="write the report to a file")
    sp.add_argument("--jobs", type=int,
                    default=int(os.environ.get("PCDL_JOBS", "1")),
                    help="worker processes for bounded searches")
    sp.add_argument("--seed", type=int, default=None,
                    help="seed echoed into the report; all searches are "
                         "deterministic")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcdl",
        description="finite pseudocomplemented distributive lattices "
                    "via their dual posets")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("dual", help="dualize a poset or a lattice")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--dot", action="store_true",
                    help="emit a DOT diagram instead of JSON")
    _add_common(sp)
    sp.set_defaults(func=_cmd_dual)

    sp = subs.add_parser("check-pspace-map",
                         help="classify a map between posets")
    sp.add_argument("--in", dest="infile", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_check_pspace_map)

    sp = subs.add_parser("star-homs",
                         help="maps between algebras preserving star")
    sp.add_argument("--from", dest="src", required=True)
    sp.add_argument("--to", dest="dst", required=True)
    sp.add_argument("--onto", action="store_true",
                    help="keep only the onto maps")
    _add_common(sp)
    sp.set_defaults(func=_cmd_star_homs)

    sp = subs.add_parser("variety-index",
                         help="least n with the algebra in the index-n "
                              "variety")
    sp.add_argument("--in", dest="infile", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_variety_index)

    sp = subs.add_parser("congruences", help="enumerate congruences")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--bound", type=int, default=12)
    _add_common(sp)
    sp.set_defaults(func=_cmd_congruences)

    sp = subs.add_parser("quotient", help="quotient by a congruence")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--by", required=True,
                    help="comma-separated dual points the congruence "
                         "erases")
    _add_common(sp)
    sp.set_defaults(func=_cmd_quotient)

    sp = subs.add_parser("extensile",
                         help="look for a congruence that fails to extend")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--max-instances", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_extensile)

    sp = subs.add_parser("amalgam",
                         help="decide the amalgamation base property")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--oracle", action="store_true",
                    help="also run the bounded extension search")
    sp.add_argument("--bound", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_amalgam)

    sp = subs.add_parser("lift", help="lift a map through an onto map")
    sp.add_argument("--gamma", required=True,
                    help="JSON file with the onto map")
    sp.add_argument("--alpha", required=True,
                    help="JSON file with the map to lift")
    _add_common(sp)
    sp.set_defaults(func=_cmd_lift)

    sp = subs.add_parser("q-model",
                         help="build and verify a fan-row model")
    sp.add_argument("--N", type=int, required=True,
                    help="number of full components")
    sp.add_argument("--m", type=int, required=True,
                    help="number of merged components")
    sp.add_argument("--verify",
                    choices=["all", "collapse", "separation", "lift",
                             "divergence"],
                    default="all")
    sp.add_argument("--bound", type=int, default=6)
    sp.add_argument("--dot", action="store_true",
                    help="emit DOT of both posets and the collapse arrows")
    _add_common(sp)
    sp.set_defaults(func=_cmd_q_model)

    sp = subs.add_parser("catalog",
                         help="survey all duals of a given size")
    sp.add_argument("--max-points", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--bound", type=int, default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 3
    except (ValueError, AssertionError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
