"""Command-line front end.

Every command reads JSON inputs, prints one JSON report to stdout (CSV only
for oracle point dumps) and exits 0.  Domain failures (bad file, violated
precondition, blown budget) print a structured error object and exit 1;
usage errors exit 2.  Reports embed the tool version and a sha256 digest of
every input file, and identical inputs always produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .adt import (
    AdtDistribution,
    AdtParams,
    check_entropy_diff,
    check_less_noisy,
    random_product_dists,
)
from .duality import dualize
from .errors import TincellError
from .network import ChannelStrengths, parse_network, validate
from .oracle import GridSpec, grid_achievable_points, oracle_max_sum
from .regions import (
    Subnetwork,
    classify_regime,
    ia_sum_gdof,
    identity_suborder,
    max_weighted_sum,
    polyhedral_region,
    region_to_dict,
    tina_region_contains,
)
from .strategies import (
    FiniteSnrConfig,
    gdof_bounds,
    parse_strategy,
    sinr_rates_ibc,
    strategy_to_dict,
)


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise TincellError(f"cannot read {path}: {exc}") from exc


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _parse_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise TincellError(f"bad numeric list {text!r}: {exc}") from exc


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


class _Inputs:
    """Tracks input files so the report can embed their digests."""

    def __init__(self):
        self.digests = {}

    def net(self, path: str) -> ChannelStrengths:
        data = _read(path)
        self.digests["net"] = _digest(data)
        return parse_network(data.decode("utf-8"))

    def strategy(self, path: str, net: ChannelStrengths):
        data = _read(path)
        self.digests["strategy"] = _digest(data)
        return parse_strategy(data.decode("utf-8"), net)

    def json_file(self, key: str, path: str):
        data = _read(path)
        self.digests[key] = _digest(data)
        try:
            return json.loads(data.decode("utf-8"))
        except json.JSONDecodeError as exc:
            raise TincellError(f"{path}: invalid JSON: {exc}") from exc

    def envelope(self, payload: dict) -> dict:
        return {"version": __version__, "inputs": self.digests, **payload}


def _subnet_from_arg(arg: str, net: ChannelStrengths, inputs: _Inputs) -> Subnetwork:
    if arg == "all":
        return Subnetwork.full(net)
    doc = inputs.json_file("subnet", arg)
    try:
        return Subnetwork(tuple(tuple(int(s) for s in cell) for cell in doc))
    except (TypeError, ValueError) as exc:
        raise TincellError(f"bad subnet file: {exc}") from exc


def _order_from_arg(arg: str, subnet: Subnetwork, inputs: _Inputs) -> dict:
    if arg == "id":
        return identity_suborder(subnet)
    doc = inputs.json_file("order", arg)
    try:
        cells = subnet.cells()
        return {cells[i]: tuple(int(s) for s in doc[i]) for i in range(len(cells))}
    except (TypeError, ValueError, IndexError, KeyError) as exc:
        raise TincellError(f"bad order file: {exc}") from exc


def _cmd_validate(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    violations = validate(net)
    return inputs.envelope({"ok": not violations, "violations": [list(v) for v in violations]})


def _cmd_classify(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    return inputs.envelope({"regime": classify_regime(net).value})


def _cmd_region(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    subnet = _subnet_from_arg(args.subnet, net, inputs)
    order = _order_from_arg(args.order, subnet, inputs)
    region = polyhedral_region(net, order, subnet)
    return inputs.envelope({"region": region_to_dict(region)})


def _cmd_member(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    point = _parse_list(args.point)
    if len(point) != net.n_users:
        raise TincellError(f"point has {len(point)} entries, expected {net.n_users}")
    ok, witness = tina_region_contains(net, point)
    payload = {"contained": ok, "witness": None}
    if witness is not None:
        order, subnet = witness
        payload["witness"] = {
            "order": {str(c): list(order[c]) for c in sorted(order)},
            "subnet": [list(s) for s in subnet.slots_by_cell],
        }
    return inputs.envelope(payload)


def _cmd_maxsum(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    subnet = _subnet_from_arg(args.subnet, net, inputs)
    order = _order_from_arg(args.order, subnet, inputs)
    weights = _parse_list(args.weights)
    region = polyhedral_region(net, order, subnet)
    value, arg = max_weighted_sum(region, weights)
    return inputs.envelope({"value": float(value), "argmax": [float(x) for x in arg]})


def _cmd_bounds(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    strategy = inputs.strategy(args.strategy, net)
    bounds = gdof_bounds(net, strategy)
    return inputs.envelope({"side": strategy.side, "bounds": [float(b) for b in bounds]})


def _cmd_rates(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    strategy = inputs.strategy(args.strategy, net)
    if strategy.side != "ibc":
        raise TincellError("finite-SNR rates are only defined for downlink strategies")
    cfg = FiniteSnrConfig(P=float(args.pnominal))
    pairs = sinr_rates_ibc(net, strategy.order, strategy.power, cfg)
    log2p = math.log2(cfg.P)
    return inputs.envelope({
        "P": cfg.P,
        "sinr": [s for s, _ in pairs],
        "rate_bits": [r for _, r in pairs],
        "rate_over_log2P": [r / log2p for _, r in pairs],
    })


def _cmd_dualize(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    strategy = inputs.strategy(args.strategy, net)
    report = dualize(net, strategy)
    return inputs.envelope({
        "direction": report.direction,
        "input": strategy_to_dict(report.input_strategy),
        "output": strategy_to_dict(report.output_strategy),
        "gamma": [float(g) for g in report.gamma],
    })


def _cmd_oracle(args):
    inputs = _Inputs()
    net = inputs.net(args.net)
    step = Fraction(args.grid) if args.grid is not None else Fraction(1, 20)
    depth = Fraction(args.rmax) if args.rmax is not None else net.max_strength() + 1
    grid = GridSpec(step=step, depth=depth)
    mode = "exact" if args.exact else "float"
    points = grid_achievable_points(net, args.side, grid, mode=mode, budget=args.budget)
    if args.csv:
        users = net.users()
        sys.stdout.write(",".join(f"d_cell{u.cell}_slot{u.slot}" for u in users) + "\n")
        for p in sorted(points):
            sys.stdout.write(",".join(repr(float(x)) for x in p) + "\n")
        return None
    payload = {
        "side": args.side,
        "mode": mode,
        "grid": {"step": float(grid.step), "depth": float(grid.depth)},
        "count": len(points),
    }
    if args.weights is not None:
        w = _parse_list(args.weights)
        payload["max_sum"] = float(oracle_max_sum(net, args.side, w, grid, mode=mode, budget=args.budget))
    return inputs.envelope(payload)


def _cmd_ia(args) -> dict:
    inputs = _Inputs()
    net = inputs.net(args.net)
    rep = ia_sum_gdof(net)
    return inputs.envelope({
        "d_tina": float(rep.d_tina),
        "gamma_ia": float(rep.gamma_ia),
        "d_ia": float(rep.d_ia),
        "applicable": rep.applicable,
    })


def _cmd_adt(args) -> dict:
    try:
        m1, m2, n1, n2 = (int(x) for x in args.params.split(","))
    except ValueError as exc:
        raise TincellError(f"bad --params {args.params!r}: {exc}") from exc
    params = AdtParams(m1, m2, n1, n2)
    rng = np.random.default_rng(args.seed)
    dists = [AdtDistribution.uniform(params.q)]
    dists += random_product_dists(params.q, args.trials, rng)
    check = check_less_noisy if args.mode == "lessnoisy" else check_entropy_diff
    report = check(params, dists)
    worst = None
    if report.worst_index is not None:
        d = dists[report.worst_index]
        worst = {"p1": list(d.p1), "p2": list(d.p2)}
    return {
        "version": __version__,
        "inputs": {},
        "mode": report.mode,
        "params": [m1, m2, n1, n2],
        "trials": args.trials,
        "min_slack": report.min_slack,
        "passed": report.passed,
        "worst_case_dist": worst,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tincell",
        description="GDoF regions, duality and regime classification for multi-cell TIN",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        for flag, kwargs in flags.items():
            p.add_argument(f"--{flag}", **kwargs)
        return p

    net_flag = {"required": True, "help": "network JSON file"}
    add("validate", _cmd_validate, net=net_flag)
    add("classify", _cmd_classify, net=net_flag)
    add(
        "region", _cmd_region, net=net_flag,
        order={"default": "id", "help": "'id' or order JSON file"},
        subnet={"default": "all", "help": "'all' or subnet JSON file"},
    )
    add("member", _cmd_member, net=net_flag, point={"required": True, "help": "comma list"})
    add(
        "maxsum", _cmd_maxsum, net=net_flag,
        order={"default": "id"}, subnet={"default": "all"},
        weights={"required": True, "help": "comma list of nonnegative weights"},
    )
    add("bounds", _cmd_bounds, net=net_flag, strategy={"required": True})
    add(
        "rates", _cmd_rates, net=net_flag, strategy={"required": True},
        pnominal={"required": True, "type": float, "help": "nominal power P > 1"},
    )
    add("dualize", _cmd_dualize, net=net_flag, strategy={"required": True})
    oracle_p = add(
        "oracle", _cmd_oracle, net=net_flag,
        side={"default": "ibc", "choices": ["ibc", "imac"]},
        grid={"default": None, "help": "exponent step (default 0.05)"},
        rmax={"default": None, "help": "search depth (default max strength + 1)"},
        budget={"default": 10**8, "type": int},
        weights={"default": None},
    )
    oracle_p.add_argument("--csv", action="store_true", help="dump points as CSV")
    mode = oracle_p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--float", dest="float_mode", action="store_true")
    add("ia", _cmd_ia, net=net_flag)
    add(
        "adt", _cmd_adt,
        params={"required": True, "help": "m1,m2,n1,n2"},
        trials={"default": 1000, "type": int},
        mode={"default": "lessnoisy", "choices": ["lessnoisy", "entropydiff"]},
        seed={"default": 0, "type": int},
    )
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except (TincellError, ValueError) as exc:
        _emit({
            "version": __version__,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        })
        return 1
    if report is not None:
        _emit(report)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
