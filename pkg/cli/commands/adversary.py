"""
`adversary-script`: write the wings/tails swap script, optionally with the tree
and its role map.
"""
from __future__ import annotations
import argparse
import logging
from pathlib import Path
from typing import Any

from cli.config import Config
from core.fileio import write_roles, write_script, write_tree
from evolver.scripts import make_wings_script

logger = logging.getLogger(__name__)


def add_parser(subparsers: argparse._SubParsersAction) -> None:
    p = subparsers.add_parser("adversary-script", help="Generate the wings/tails swap script")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--tails", choices=["leaves", "chain"], default="leaves")
    p.add_argument("--out", type=Path, help="script file (default <output dir>/wings_<alpha>_<beta>.txt)")
    p.add_argument("--tree-out", dest="tree_out", type=Path)
    p.add_argument("--roles-out", dest="roles_out", type=Path)
    p.set_defaults(handler=run)


def cmd_adversary_script(
    alpha: int,
    beta: int,
    tails: str,
    out: Path,
    tree_out: Path | None = None,
    roles_out: Path | None = None,
) -> dict[str, Any]:
    ws = make_wings_script(alpha, beta, tails)
    write_script(ws.script.edges, out)
    if tree_out:
        write_tree(ws.wings.tree, tree_out)
    if roles_out:
        write_roles(ws.wings.roles, roles_out)
    return {
        "alpha": alpha,
        "beta": beta,
        "tails": ws.wings.tails.value,
        "n": ws.wings.tree.n,
        "m": ws.m,
        "opt": ws.opt,
        "D_T1_T0": ws.distance,
        "within_opt": ws.m <= ws.opt,
        "script": str(out),
    }


def run(args: argparse.Namespace, config: Config) -> int:
    out = args.out or config.output_dir / f"wings_{args.alpha}_{args.beta}.txt"
    info = cmd_adversary_script(args.alpha, args.beta, args.tails, out, args.tree_out, args.roles_out)
    print(f"wings(alpha={info['alpha']}, beta={info['beta']}, tails={info['tails']}): n={info['n']}")
    print(f"  m = {info['m']}    opt = {info['opt']}    D(T1,T0) = {info['D_T1_T0']}")
    if not info["within_opt"]:
        print("  script is longer than opt")
    print(f"  script -> {info['script']}")
    return 0
