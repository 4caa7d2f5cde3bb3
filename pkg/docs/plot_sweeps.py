"""Plot CSV output of ``wyko-tau sweep``.

Usage:
    wyko-tau sweep --preset tau4_surface --out tau4.csv
    python docs/plot_sweeps.py tau4.csv tau4 --out tau4.png

    wyko-tau sweep --preset tau48_vs_violation --out fig3.csv
    python docs/plot_sweeps.py fig3.csv tau48

Requires matplotlib, which is not a dependency of wyko-tau.
"""

import argparse

import matplotlib.pyplot as plt
import numpy as np


def load(path):
    return np.genfromtxt(path, delimiter=",", names=True)


def plot_surface(data, column, ax):
    thetas = np.unique(data["theta1"])
    n = thetas.size
    z = data[column].reshape(n, n)
    mesh = ax.pcolormesh(thetas, thetas, z.T, shading="auto")
    ax.set_xlabel("theta1 (rad)")
    ax.set_ylabel("theta2 (rad)")
    return mesh


def plot_against_violation(data, column, ax):
    ax.plot(data["bell"], data[column], ".", markersize=2)
    ax.axvline(2.0, color="grey", linestyle="--", linewidth=0.8)
    ax.set_xlabel("<B>")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv")
    parser.add_argument("column", help="tau4, tau48 or bell")
    parser.add_argument("--out", help="image path; shows a window if omitted")
    args = parser.parse_args()

    data = load(args.csv)
    fig, ax = plt.subplots()
    if "theta1" in data.dtype.names:
        fig.colorbar(plot_surface(data, args.column, ax), label=args.column)
    else:
        plot_against_violation(data, args.column, ax)
        ax.set_ylabel(args.column)
    if args.out:
        fig.savefig(args.out, dpi=150)
    else:
        plt.show()


if __name__ == "__main__":
    main()
