"""Figure for a bench table: observed ratio of every row, grouped by
algorithm, with the proven bound marked where it is a number."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _num(text):
    try:
        if "/" in text:
            a, b = text.split("/")
            return float(a) / float(b)
        return float(text)
    except ValueError:
        return None


def plot_rows(rows, path):
    """Write a PNG to ``path``; rows are the (non-summary) bench rows."""
    groups = []
    for r in rows:
        key = f"{r['problem']}\n{r['algorithm']}"
        if key not in groups:
            groups.append(key)
    fig, ax = plt.subplots(figsize=(max(6, 0.9 * len(groups) + 2), 4.5))
    for x, key in enumerate(groups):
        mine = [r for r in rows if f"{r['problem']}\n{r['algorithm']}" == key]
        ys = [_num(r["ratio_float"]) for r in mine]
        pts = [(y, r["status"]) for y, r in zip(ys, mine) if y is not None and y != float("inf")]
        for y, status in pts:
            ax.plot(x, y, "o", ms=4, color="tab:red" if status == "fail" else "tab:blue", alpha=0.7)
        bounds = {_num(r["bound"]) for r in mine if r["bound"] and r["check"] in ("le", "eq")}
        for b in bounds:
            if b is not None:
                ax.plot([x - 0.3, x + 0.3], [b, b], color="black", lw=1)
    ax.set_xticks(range(len(groups)))
    ax.set_xticklabels(groups, fontsize=7, rotation=60, ha="right")
    ax.set_yscale("log")
    ax.set_ylabel("observed ratio (bar: bound)")
    ax.set_title("ratio per instance")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
