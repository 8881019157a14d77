"""One-off search pinning the stress/contact model constants.

The target endpoints fix the models' behaviour but not their CPTs, so
the constants are calibrated: with the shared tested CPT held fixed, sweep P(risk|h),
P(risk|not h) and the four P(covid | risk, h) entries (risk must raise
covid within each healthcare stratum) on a 0.001 grid, minimizing squared
distance to the target tested-conditioned endpoints; the contact search
additionally constrains the population risk ratio to [1.8, 2.2]. Results
are frozen into colliderbn/models.py; this script is not package runtime.
"""

import numpy as np

P_H = 0.05
# tested | (healthcare, covid): true-probabilities, same as the smoking model
T_HC, T_HN, T_NC, T_NN = 0.99, 0.10, 0.15, 0.01


def endpoints(ps_h, ps_n, pc_sh, pc_sn, pc_nh, pc_nn):
    """Vectorized (cond_risk, cond_norisk, pop_risk, pop_norisk)."""
    out = []
    for risk in (True, False):
        pr_h = ps_h if risk else 1 - ps_h
        pr_n = ps_n if risk else 1 - ps_n
        pc_h = pc_sh if risk else pc_nh
        pc_n = pc_sn if risk else pc_nn
        num = P_H * pr_h * pc_h * T_HC + (1 - P_H) * pr_n * pc_n * T_NC
        den = (P_H * pr_h * (pc_h * T_HC + (1 - pc_h) * T_HN)
               + (1 - P_H) * pr_n * (pc_n * T_NC + (1 - pc_n) * T_NN))
        pnum = P_H * pr_h * pc_h + (1 - P_H) * pr_n * pc_n
        pden = P_H * pr_h + (1 - P_H) * pr_n
        out.append((num / den, pnum / pden))
    (c_r, p_r), (c_n, p_n) = out
    return c_r, c_n, p_r, p_n


def search(target_risk, target_norisk, ratio_band=None):
    g = np.round(np.arange(0.001, 0.061, 0.001), 3)
    pc_sh = g[:, None, None, None]
    pc_sn = g[None, :, None, None]
    pc_nh = g[None, None, :, None]
    pc_nn = g[None, None, None, :]
    monotone = (pc_sh > pc_nh) & (pc_sn > pc_nn)

    best = None
    for ps_h in np.round(np.arange(0.30, 0.96, 0.05), 2):
        for ps_n in np.round(np.arange(0.01, 0.16, 0.02), 2):
            if ps_n >= ps_h:
                continue
            c_r, c_n, p_r, p_n = endpoints(ps_h, ps_n, pc_sh, pc_sn, pc_nh, pc_nn)
            ok = monotone & (c_r < c_n)
            if ratio_band is not None:
                ratio = p_r / p_n
                ok = ok & (ratio >= ratio_band[0]) & (ratio <= ratio_band[1])
            err = (c_r - target_risk) ** 2 + (c_n - target_norisk) ** 2
            err = np.where(ok, err, np.inf)
            idx = np.unravel_index(np.argmin(err), err.shape)
            if np.isfinite(err[idx]) and (best is None or err[idx] < best[0]):
                best = (float(err[idx]), float(ps_h), float(ps_n),
                        float(g[idx[0]]), float(g[idx[1]]), float(g[idx[2]]), float(g[idx[3]]))
    return best


def report(label, best):
    err, ps_h, ps_n, pc_sh, pc_sn, pc_nh, pc_nn = best
    c_r, c_n, p_r, p_n = endpoints(ps_h, ps_n, pc_sh, pc_sn, pc_nh, pc_nn)
    print(f"{label}: ps_h={ps_h} ps_n={ps_n} pc_sh={pc_sh} pc_sn={pc_sn} "
          f"pc_nh={pc_nh} pc_nn={pc_nn}")
    print(f"  conditioned-on-tested: risk {c_r:.6f}  no-risk {c_n:.6f}  (err {err:.3e})")
    print(f"  population: risk {p_r:.6f}  no-risk {p_n:.6f}  ratio {p_r/p_n:.3f}")
    print(f"  do-contrast: {P_H*pc_sh+(1-P_H)*pc_sn - (P_H*pc_nh+(1-P_H)*pc_nn):+.6f}")


if __name__ == "__main__":
    report("stress ", search(0.106, 0.159))
    report("contact", search(0.066, 0.079, ratio_band=(1.8, 2.2)))
