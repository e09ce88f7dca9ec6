"""The ``hv`` command.

Every subcommand builds a ``RunConfig``, runs it through ``run_suite`` and
prints a report (or, for ``act``, a vector). Exit codes: 0 pass, 1 fail,
2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import centrality_check, jacobi_check
from .analysis import (
    TOperatorSpec,
    distinguish,
    fingerprint,
    local_nilpotency_probe,
    module_axiom_check,
    t_operator_apply,
)
from .exact import parse_scalar
from .modules import (
    HBarModuleData,
    HighestWeightData,
    IndModule,
    MVModule,
    OmegaModule,
    OmegaParams,
    degree2_module,
    degreen_module,
    intermediate_module,
)
from .parsing import ParseError, parse_generator, parse_vector
from .report import Check, Report, emit_report
from .tensor import TensorModule, TensorParams, irreducibility_witness, submodule_chain_verify, tensor_iso_check

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2}
USAGE_ERROR = 3

FAMILIES = ("omega", "intermediate", "degree2", "degreen", "ind", "mv", "tensor")
CLASS_TAG = {"tensor": "TensorProduct", "ind": "Ind", "mv": "MV"}


class ConfigError(ValueError):
    """A RunConfig that cannot be executed (bad family, params, or flags)."""


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    family: str | None = None
    params: dict = field(default_factory=dict)
    family2: str | None = None
    params2: dict = field(default_factory=dict)
    seed: int = 0
    fmt: str = "json"
    window: int | None = None
    cutoff: tuple = (2, 2)
    trials: int | None = None
    gen: str | None = None
    vec: str | None = None
    options: dict = field(default_factory=dict)


# -- building modules from JSON parameters -----------------------------------


def _s(params: dict, key: str, default=None):
    if key not in params:
        if default is None:
            raise ConfigError(f"missing parameter {key!r}")
        return parse_scalar(str(default))
    try:
        return parse_scalar(str(params[key]))
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"parameter {key!r}: {exc}") from exc


def build_module(family: str | None, params: dict):
    """Instantiate a module family from its JSON parameters."""
    try:
        if family == "omega":
            return OmegaModule(OmegaParams(_s(params, "lambda"), _s(params, "alpha"), _s(params, "beta", 0)))
        if family == "intermediate":
            return intermediate_module(_s(params, "gamma"), _s(params, "alpha"), _s(params, "beta", 0))
        if family == "degree2":
            f = {int(e): parse_scalar(str(c)) for e, c in params.get("f", {}).items()}
            if not f:
                raise ConfigError("degree2 needs a nonzero Laurent polynomial 'f' as {exponent: coeff}")
            return degree2_module(f, _s(params, "alpha"), _s(params, "beta", 0))
        if family == "degreen":
            return degreen_module(int(params.get("n", 1)), _s(params, "alpha"), _s(params, "beta", 0))
        if family == "ind":
            return IndModule(HighestWeightData(_s(params, "h"), _s(params, "c0"), _s(params, "c1", 0),
                                               _s(params, "c2", 0), _s(params, "c3", 0)))
        if family == "mv":
            V = HBarModuleData.from_json(params["V"])
            return MVModule(V, OmegaParams(_s(params, "lambda"), _s(params, "alpha"), _s(params, "beta", 0)))
        if family == "tensor":
            return TensorModule(TensorParams.from_json(params))
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
        raise ConfigError(f"invalid {family} parameters: {exc}") from exc
    raise ConfigError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def class_tag(family: str) -> str:
    return CLASS_TAG.get(family, "AFamily")


def _vector(cfg: RunConfig, module, rng: random.Random):
    if cfg.vec is None:
        return module.random_vector(rng)
    try:
        return parse_vector(cfg.vec, module)
    except ParseError as exc:
        raise ConfigError(f"--vec: {exc}") from exc


def _generator(text: str | None):
    if text is None:
        raise ConfigError("--gen is required")
    try:
        return parse_generator(text)
    except ParseError as exc:
        raise ConfigError(f"--gen: {exc}") from exc


# -- dispatch -----------------------------------------------------------------


def _run_named_suite(name: str, seed: int) -> Report:
    from .suites import SUITES

    return SUITES[name](seed)


def _suite(cfg: RunConfig) -> Report:
    from .suites import SUITES

    only = cfg.options.get("only") or list(SUITES)
    unknown = [n for n in only if n not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITES)}")
    jobs = cfg.options.get("jobs", 1)
    if jobs > 1:
        # Independent suites run in worker processes; assembly stays ordered.
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_named_suite, only, [cfg.seed] * len(only)))
    else:
        reports = [_run_named_suite(n, cfg.seed) for n in only]
    return Report.merge(reports, seed=cfg.seed, prefix=only)


def _check(cfg: RunConfig) -> Report:
    if cfg.target == "jacobi":
        window = cfg.window if cfg.window is not None else 8
        r = Report.merge([jacobi_check(window, cfg.trials or 50, cfg.seed), centrality_check(window)])
        r.seed = cfg.seed
        return r
    if cfg.target == "axioms":
        if cfg.family is None:
            from .suites import axiom_suite

            return axiom_suite(seed=cfg.seed, trials=cfg.trials or 200, window=cfg.window or 5)
        module = build_module(cfg.family, cfg.params)
        return module_axiom_check(module, cfg.window or 5, cfg.trials or 200, cfg.seed)
    raise ConfigError("check expects 'jacobi' or 'axioms'")


def _verify(cfg: RunConfig) -> Report:
    o = cfg.options
    if cfg.target == "submodule-chain":
        def arg(name, default):
            try:
                return parse_scalar(str(o.get(name) if o.get(name) is not None else default))
            except (ParseError, ValueError) as exc:
                raise ConfigError(f"--{name}: {exc}") from exc

        r = submodule_chain_verify(arg("lambda", 1), arg("a1", "1/2"), arg("b1", 2), arg("a2", "1/3"), arg("b2", 0),
                                   s_max=o.get("smax") or 3, n_max=o.get("nmax") or 4, k_window=cfg.window or 4,
                                   convention=o.get("convention") or "negated")
        r.seed = cfg.seed
        return r
    if cfg.target == "irreducibility":
        if not cfg.params:
            from .suites import pipeline_suite

            return pipeline_suite(seed=cfg.seed, instances=cfg.trials or 20, cutoffs=cfg.cutoff)
        module = build_module("tensor", cfg.params)
        u = _vector(cfg, module, random.Random(cfg.seed))
        if not u:
            raise ConfigError("irreducibility needs a nonzero vector")
        r = irreducibility_witness(module.tp, u, cfg.cutoff, module=module, window=cfg.window)
        r.seed = cfg.seed
        return r
    if cfg.target == "t-operator":
        if cfg.family is None:
            from .suites import t_operator_suite

            return t_operator_suite(seed=cfg.seed)
        return _verify_t_operator(cfg)
    if cfg.target == "nilpotency":
        module = build_module(cfg.family, cfg.params)
        gen = _generator(cfg.gen)
        v = _vector(cfg, module, random.Random(cfg.seed))
        res = local_nilpotency_probe(module, gen, v, o.get("max_iter") or 20)
        expect = o.get("expect")
        ok = True if expect is None else (res.nilpotent == (expect == "nilpotent"))
        chk = Check("nilpotency", {"family": cfg.family, "gen": str(gen), "v": module.format_vector(v)},
                    expect or "observation", str(res), ok)
        return Report.from_checks([chk], seed=cfg.seed)
    raise ConfigError("verify expects submodule-chain, irreducibility, t-operator or nilpotency")


def _verify_t_operator(cfg: RunConfig) -> Report:
    """T-operators on one module; default expectation follows the family."""
    module = build_module(cfg.family, cfg.params)
    o = cfg.options
    rng = random.Random(cfg.seed)
    v = _vector(cfg, module, rng) if cfg.vec is not None else None
    if cfg.family == "tensor" and v is None:
        v = module.ground(module.ind.hw_vector())
    if v is None:
        v = module.random_vector(rng)
    expect = o.get("expect")
    s = o.get("s")
    if cfg.family == "mv":
        thr = module.V.t_threshold()
        s = s or max(1, thr + 1)
        expect = expect or ("zero" if s > thr else None)
    s = s or 1
    if expect is None:
        expect = {"tensor": "nonzero", "ind": None}.get(cfg.family, "zero")
    if o.get("l") is not None and o.get("m") is not None:
        pairs = [(o["l"], o["m"])]
    elif expect == "nonzero":
        pairs = [(-12, -5)] if s == 1 else [(2 * (-(s + 2)) - s - 3, -(s + 2))]
    else:
        w = cfg.window or 6
        pairs = [(l, m) for l in range(-w, w + 1) for m in range(-w, w + 1)]  # noqa: E741
    checks = []
    for l, m in pairs:  # noqa: E741
        out = t_operator_apply(TOperatorSpec(l, m, s), module, v)
        ok = None if expect is None else (bool(out) == (expect == "nonzero"))
        checks.append(Check(f"T^({s})_{{{l},{m}}}", {"v": module.format_vector(v)}, expect or "observation",
                            module.format_vector(out), ok))
    bad = next((c for c in checks if c.ok is False), None)
    return Report.from_checks(checks, counterexample=bad.to_json() if bad else None, seed=cfg.seed)


def _fingerprint(cfg: RunConfig) -> Report:
    module = build_module("tensor", cfg.params)
    fp = fingerprint(module, bound=cfg.options.get("bound") or 4)
    same = tensor_iso_check(fp.to_params(), module.tp)
    chk = Check("fingerprint", {"params": module.tp.to_json()}, "invariants of the input parameters",
                fp.to_json(), same)
    return Report.from_checks([chk], seed=cfg.seed)


def _iso(cfg: RunConfig) -> Report:
    a = build_module("tensor", cfg.params).tp
    b = build_module("tensor", cfg.params2).tp
    same = tensor_iso_check(a, b)
    chk = Check("iso", {"a": a.to_json(), "b": b.to_json()}, "isomorphic", "isomorphic" if same else "not isomorphic",
                same)
    return Report.from_checks([chk], seed=cfg.seed)


def _distinguish(cfg: RunConfig) -> Report:
    if cfg.family is None or cfg.family2 is None:
        raise ConfigError("distinguish needs --family/--params and --family2/--params2")
    a = build_module(cfg.family, cfg.params)
    b = build_module(cfg.family2, cfg.params2)
    verdict = distinguish((a, class_tag(cfg.family)), (b, class_tag(cfg.family2)), seed=cfg.seed)
    verdict.report.seed = cfg.seed
    return verdict.report


def run_suite(cfg: RunConfig) -> Report:
    """Execute one configuration; all randomness derives from ``cfg.seed``."""
    if not 0 <= cfg.seed < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    handlers = {"check": _check, "verify": _verify, "fingerprint": _fingerprint, "iso": _iso,
                "distinguish": _distinguish, "suite": _suite}
    if cfg.command not in handlers:
        raise ConfigError(f"unknown command {cfg.command!r}")
    return handlers[cfg.command](cfg)


def act(cfg: RunConfig) -> str:
    module = build_module(cfg.family, cfg.params)
    gen = _generator(cfg.gen)
    if cfg.vec is None:
        raise ConfigError("--vec is required")
    return module.format_vector(module.act(gen, _vector(cfg, module, random.Random(cfg.seed))))


# -- argument parsing ---------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _json_arg(text: str) -> dict:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise argparse.ArgumentTypeError("params must be a JSON object")
    return data


def _cutoff(text: str) -> tuple:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("cutoff must look like n,m") from exc
    if a < 0 or b < 0:
        raise argparse.ArgumentTypeError("cutoffs must be nonnegative")
    return a, b


def _seed(text: str) -> int:
    n = int(text)
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return n


def _rational(text: str) -> str:
    parse_scalar(text)
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", type=_json_arg, default={}, help="JSON object, or @file")
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="json")
    common.add_argument("--window", type=int)
    common.add_argument("--cutoff", type=_cutoff, default=(2, 2), help="exponent and depth cutoffs, n,m")
    common.add_argument("--trials", type=int)
    common.add_argument("--gen", help="generator, e.g. 'L[1]' or 'I[-2]'")
    common.add_argument("--vec", help="vector in the family's text form")

    p = _Parser(prog="hv", description="Exact checks for modules over the twisted Heisenberg-Virasoro algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="Lie-algebra and module-axiom checks")
    c.add_argument("target", choices=("jacobi", "axioms"))

    sub.add_parser("act", parents=[common], help="apply a generator to a vector (text output by default)")

    v = sub.add_parser("verify", parents=[common], help="verify a structural statement")
    v.add_argument("target", choices=("submodule-chain", "irreducibility", "t-operator", "nilpotency"))
    v.add_argument("--lambda", dest="lam", type=_rational)
    v.add_argument("--a1", type=_rational)
    v.add_argument("--b1", type=_rational)
    v.add_argument("--a2", type=_rational)
    v.add_argument("--b2", type=_rational)
    v.add_argument("--smax", type=int)
    v.add_argument("--nmax", type=int)
    v.add_argument("--convention", choices=("negated", "canonical"))
    v.add_argument("--s", type=int, help="order of the T-operator")
    v.add_argument("--l", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--expect", choices=("zero", "nonzero", "nilpotent", "not-nilpotent"))
    v.add_argument("--max-iter", type=int)

    f = sub.add_parser("fingerprint", parents=[common], help="recover tensor parameters from the action")
    f.add_argument("--bound", type=int)

    i = sub.add_parser("iso", parents=[common], help="compare two tensor modules (pass = isomorphic)")
    i.add_argument("--params2", type=_json_arg, required=True)

    d = sub.add_parser("distinguish", parents=[common], help="separate two modules by invariant tests")
    d.add_argument("--family2", choices=FAMILIES, required=True)
    d.add_argument("--params2", type=_json_arg, required=True)

    s = sub.add_parser("suite", parents=[common], help="run the seeded verification suites")
    s.add_argument("--only", help="comma-separated suite names")
    s.add_argument("--jobs", type=int, default=1, help="worker processes for independent suites")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    options = {}
    for key in ("lam", "a1", "b1", "a2", "b2", "smax", "nmax", "convention", "s", "l", "m", "expect",
                "max_iter", "bound", "jobs"):
        if getattr(ns, key, None) is not None:
            options["lambda" if key == "lam" else key] = getattr(ns, key)
    if getattr(ns, "only", None):
        options["only"] = [x.strip() for x in ns.only.split(",") if x.strip()]
    return RunConfig(
        command=ns.command,
        target=getattr(ns, "target", None),
        family=ns.family,
        params=ns.params,
        family2=getattr(ns, "family2", None),
        params2=getattr(ns, "params2", {}) or {},
        seed=ns.seed,
        fmt=ns.fmt,
        window=ns.window,
        cutoff=ns.cutoff,
        trials=ns.trials,
        gen=ns.gen,
        vec=ns.vec,
        options=options,
    )


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "act" and "--format" not in argv:
        ns.fmt = "text"
    try:
        cfg = config_from_args(ns)
        if cfg.command == "act":
            text = act(cfg)
            if cfg.fmt == "json":
                text = json.dumps({"family": cfg.family, "gen": cfg.gen, "vec": cfg.vec, "result": text},
                                  separators=(",", ":"))
            sys.stdout.write(text + "\n")
            return 0
        report = run_suite(cfg)
    except (ConfigError, ParseError) as exc:
        sys.stderr.write(f"hv: error: {exc}\n")
        return USAGE_ERROR
    sys.stdout.buffer.write(emit_report(report, cfg.fmt))
    sys.stdout.flush()
    return EXIT[report.status]


if __name__ == "__main__":
    sys.exit(main())
