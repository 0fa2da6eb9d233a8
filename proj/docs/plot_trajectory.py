# Copyright 2026 The cgvf Authors
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
"""Plot CSV output of `cgvf run` / `cgvf demo` and `cgvf field`.

usage:
  python3 docs/plot_trajectory.py out/sim1/trajectory.csv
  python3 docs/plot_trajectory.py --field field.csv
"""

import argparse
import pathlib

import matplotlib.pyplot as plt
import pandas as pd


def plot_run(csv: pathlib.Path) -> None:
    rows = pd.read_csv(csv)
    edges = pd.read_csv(csv.with_name(csv.stem + "_edges.csv"))
    fig, (ax_xy, ax_phi, ax_edge) = plt.subplots(1, 3, figsize=(15, 4.5))
    for agent, g in rows.groupby("agent"):
        ax_xy.plot(g["xI_1"], g["xI_2"], label=f"agent {agent}")
        ax_phi.semilogy(g["t"], g["phi_norm"].clip(lower=1e-16), label=f"agent {agent}")
    for (i, j), g in edges.groupby(["i", "j"]):
        ax_edge.plot(g["t"], g["theta_error"], label=f"({i},{j})")
    ax_xy.set(xlabel="x [m]", ylabel="y [m]", title="inertial trajectories")
    ax_xy.axis("equal")
    ax_phi.set(xlabel="t [s]", ylabel="||phi||", title="path error")
    ax_edge.set(xlabel="t [s]", ylabel="rad", title="coordination error")
    for ax in (ax_xy, ax_phi, ax_edge):
        ax.legend()
    fig.tight_layout()
    plt.show()


def plot_field(csv: pathlib.Path) -> None:
    rows = pd.read_csv(csv)
    rows = rows[rows["singular"] == 0]
    for theta, g in rows.groupby("theta"):
        fig, ax = plt.subplots(figsize=(6, 5))
        ax.quiver(g["x"], g["y"], g["u_x"], g["u_y"], g["norm"])
        ax.set(xlabel="x [m]", ylabel="y [m]", title=f"field slice theta = {theta}")
        ax.axis("equal")
    plt.show()


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("csv", type=pathlib.Path)
    parser.add_argument("--field", action="store_true", help="CSV from `cgvf field`")
    args = parser.parse_args()
    (plot_field if args.field else plot_run)(args.csv)


if __name__ == "__main__":
    main()
