"""Matplotlib figures written next to the CSV outputs.

Figures are rendered with the Agg backend and saved as SVG with a fixed
hash salt and no date stamp, so reruns produce identical files.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

BAND_COLOR = "#8fd19e"
LINE_COLOR = "#1f3b73"

_RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.linewidth": 0.8,
    "xtick.direction": "in",
    "ytick.direction": "in",
    "lines.linewidth": 1.6,
    "svg.hashsalt": "bondshear",
    "svg.fonttype": "none",
}


def _figure(width=5.0, height=None):
    golden = (np.sqrt(5) - 1.0) / 2.0
    return plt.subplots(figsize=(width, height or width * golden))


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def plot_shear_curve(rms_nm, shear_mpa, path, band=(30.0, 45.0), operating_rms_nm=None):
    """Shear stress vs top-surface rms with the measured band shaded."""
    with plt.rc_context(_RC):
        fig, ax = _figure()
        ax.axhspan(band[0], band[1], color=BAND_COLOR, alpha=0.5, lw=0, label=f"{band[0]:g}-{band[1]:g} MPa")
        ax.plot(rms_nm, shear_mpa, color=LINE_COLOR, label="vdW model")
        if operating_rms_nm is not None:
            ax.axvline(operating_rms_nm, color="0.4", ls=":", lw=1.0)
        ax.set_xlabel("top surface RMS roughness (nm)")
        ax.set_ylabel("shear stress (MPa)")
        ax.set_yscale("log")
        ax.legend(frameon=False)
        _save(fig, path)


def plot_landscape(offsets_nm, energies_mj, path, rest_offset_nm=None):
    with plt.rc_context(_RC):
        fig, ax = _figure()
        ax.plot(offsets_nm, energies_mj, color=LINE_COLOR, marker=".", ms=3)
        if rest_offset_nm is not None:
            ax.axvline(rest_offset_nm, color="0.4", ls=":", lw=1.0)
        ax.set_xlabel("lateral offset (nm)")
        ax.set_ylabel(r"interface energy (mJ/m$^2$)")
        _save(fig, path)
