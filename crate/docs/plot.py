"""Plot the CSV outputs of `qndpol reproduce-all` (and `solve`, if present).

usage: python docs/plot.py OUT_DIR
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def responses(out: Path) -> None:
    for strain in ("unstrained", "strained"):
        fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
        for ax, cavity in zip(axes, ("two_sided", "single_sided")):
            path = out / f"response_{strain}_{cavity}.csv"
            if not path.exists():
                continue
            d = pd.read_csv(path)
            ax.plot(d.delta_meV, d.phase_up, "b-", label="phase, up")
            ax.plot(d.delta_meV, d.phase_down, "b:", label="phase, down")
            ax.plot(d.delta_meV, d.intensity_up, "r-", label="intensity, up")
            ax.plot(d.delta_meV, d.intensity_down, "r:", label="intensity, down")
            ax.set_title(cavity.replace("_", "-"))
            ax.set_xlabel("detuning (meV)")
        axes[0].set_ylabel("(I_D1 - I_D2) / |f_0|^2")
        axes[0].legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(out / f"response_{strain}.png", dpi=150)
        plt.close(fig)


def wavefunction(out: Path) -> None:
    for path in sorted(out.glob("psi_*_xz.csv")):
        d = pd.read_csv(path)
        grid = d.pivot(index="z_nm", columns="x_nm", values="density_nm^-3")
        fig, ax = plt.subplots(figsize=(5, 4))
        im = ax.pcolormesh(grid.columns, grid.index, grid.values, shading="auto")
        fig.colorbar(im, ax=ax, label="|psi|^2 (nm^-3)")
        ax.set_xlabel("x (nm)")
        ax.set_ylabel("z (nm)")
        fig.tight_layout()
        fig.savefig(path.with_suffix(".png"), dpi=150)
        plt.close(fig)


def main() -> None:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    responses(out)
    wavefunction(out)
    table = out / "table1.csv"
    if table.exists():
        print(pd.read_csv(table).to_string(index=False))


if __name__ == "__main__":
    main()
