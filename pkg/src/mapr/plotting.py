"""Representation-vs-target bar chart for a committee."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from mapr.model import Instance, representation_vector  # noqa: E402


def plot_representation(instance: Instance, committee, path, title: str | None = None) -> None:
    """Write a grouped bar chart of committee shares against target shares to ``path``."""
    r = representation_vector(instance.db, committee)
    labels, reps, targets, edges = [], [], [], []
    for a, rr, tt in zip(instance.schema, r, instance.target):
        for lab, x, t in zip(a.values, rr, tt):
            labels.append(f"{a.name}={lab}")
            reps.append(float(x))
            targets.append(float(t))
        edges.append(len(labels))
    x = np.arange(len(labels))
    fig, ax = plt.subplots(figsize=(min(2 + 0.45 * len(labels), 40), 4.5))
    ax.bar(x - 0.2, targets, width=0.4, label="target", color="#9db4d0")
    ax.bar(x + 0.2, reps, width=0.4, label="committee", color="#d08c60")
    for e in edges[:-1]:
        ax.axvline(e - 0.5, color="grey", linewidth=0.6)
    ax.set_xticks(x)
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("share")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
