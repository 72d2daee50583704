# Copyright 2025 CrownOps Engineering
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""``evoids bench``: optimizer runs on analytic test functions."""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from evoids.cli.helpers import echo, register_argument, settings_from_args
from evoids.core.model_types import BenchFunction
from evoids.optimizer import bench_config, run_bench, write_bench_outputs

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection


def register_bench_command(subparsers: SubparserCollection) -> None:
    """Attach the `evoids bench` command to the CLI.

    Args:
        subparsers: Top-level argparse subparser collection to register commands on.
    """
    bench = subparsers.add_parser(
        "bench",
        help="Benchmark the optimizer on sphere, rastrigin or rosenbrock",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    register_argument(
        bench,
        "--function",
        choices=[function.value for function in BenchFunction],
        default=BenchFunction.SPHERE.value,
        help="Test function to minimise.",
    )
    register_argument(bench, "--dims", type=int, default=10, help="Search-space dimensionality.")
    register_argument(
        bench,
        "--n-particles",
        type=int,
        default=None,
        help="Population size (6 for --dims 1, otherwise 30).",
    )
    register_argument(bench, "--max-fes", type=int, default=5000, help="Evaluation budget per run.")
    register_argument(bench, "--k-neighbors", type=int, default=None, help="Neighbourhood size.")
    register_argument(
        bench,
        "--stable-step-scale",
        type=float,
        default=None,
        help="Stable-walk step as a fraction of the bound width (0.03 for --dims 1, otherwise 0.1).",
    )
    register_argument(bench, "--repeats", type=int, default=10, help="Runs with seeds seed, seed+1, ...")


def execute_bench(args: argparse.Namespace) -> int:
    """Execute the bench command.

    Writes ``<function>_history.csv`` and ``<function>_summary.json`` under ``--out``.

    Args:
        args: Parsed CLI namespace.

    Returns:
        `0` when the outputs were written.
    """
    settings = settings_from_args(args)
    config = bench_config(
        args.dims,
        args.max_fes,
        seed=settings.seed,
        n_particles=args.n_particles,
        k_neighbors=args.k_neighbors,
        stable_step_scale=args.stable_step_scale,
    )
    record = run_bench(args.function, args.dims, config, repeats=args.repeats, workers=settings.threads)
    history_path, summary_path = write_bench_outputs(record, settings.out)
    summary = record.summary()
    echo(
        f"[evoids] {record.function.value} d={record.dims}: best {summary['best']:.6g}, "
        f"median {summary['median']:.6g}, worst {summary['worst']:.6g} over {len(record.runs)} runs",
    )
    echo(f"[evoids] wrote {history_path} and {summary_path}")
    return 0


__all__ = ["execute_bench", "register_bench_command"]
