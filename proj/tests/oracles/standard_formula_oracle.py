"""Independent standard-formula oracle.

Projects every model point separately with a plain decrement recursion and
writes the scenario values as a golden JSON file.

usage: standard_formula_oracle.py <data-dir> <output-json>
"""
import csv
import json
import math
import sys


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def load(data_dir):
    points = read_rows(f"{data_dir}/portfolio.csv")
    q = {int(r["age"]): float(r["q"]) for r in read_rows(f"{data_dir}/mortality.csv")}
    w = [float(r["w"]) for r in read_rows(f"{data_dir}/lapse.csv")]
    d = [float(r["delta"]) for r in read_rows(f"{data_dir}/discount.csv")]
    return points, q, w, d


def pv(points, q, w, d, volume=1.0, q_scale=1.0, q_add_year1=0.0, w_scale=1.0):
    horizon = len(d)
    total = 0.0
    for p in points:
        age = int(p["age"])
        lives = float(p["lives"]) * volume
        premium = float(p["annual_net_premium"])
        sa = float(p["sum_assured"])
        term = int(p["remaining_term"])
        for t in range(min(term, horizon)):
            qt = q_scale * q[age + t] + (q_add_year1 if t == 0 else 0.0)
            wt = w_scale * w[t]
            if qt + wt > 1.0:
                qt, wt = qt / (qt + wt), wt / (qt + wt)
            total += d[t] * lives * (premium - qt * sa)
            lives *= 1.0 - qt - wt
    return total


def main():
    data_dir, out = sys.argv[1], sys.argv[2]
    points, q, w, d = load(data_dir)
    base = pv(points, q, w, d)
    scenarios = [
        ("lapse_mass", 0.4, pv(points, q, w, d, volume=0.6)),
        ("lapse_up", 0.5, pv(points, q, w, d, w_scale=1.5)),
        ("lapse_down", 0.5, pv(points, q, w, d, w_scale=0.5)),
        ("mortality_up", 0.15, pv(points, q, w, d, q_scale=1.15)),
        ("catastrophe", 0.0015, pv(points, q, w, d, q_add_year1=0.0015)),
    ]
    sub = {name: max(base - value, 0.0) for name, _, value in scenarios}
    lapse = max(sub["lapse_mass"], sub["lapse_up"], sub["lapse_down"])
    mort = sub["mortality_up"]
    cat = sub["catastrophe"]
    scr = math.sqrt(lapse**2 + mort**2 + cat**2 + 0.5 * mort * cat + 0.5 * lapse * cat)
    golden = {
        "pvofp_det": base,
        "scenarios": [
            {"scenario": n, "magnitude": m, "pvofp": v, "sub_scr": sub[n]} for n, m, v in scenarios
        ],
        "sub_scrs": {"lapse": lapse, "mortality": mort, "catastrophe": cat},
        "correlation": 0.25,
        "scr": scr,
    }
    with open(out, "w") as f:
        json.dump(golden, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
