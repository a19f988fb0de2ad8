/// Hausdorff distance bound between `[0,1]` and the zoomed set
/// `E_k = {α^m β^n : m ≥ 0, n ≥ −k} ∩ [0,1]`, truncated below `mesh`.
///
/// `E_k` is what the rescaling `x ↦ β^{−k} x` sees of the attractor of
/// `{αx, βx, γx + 1 − γ}` near the origin; the third map never reaches a
/// neighbourhood of 0 and does not enter.  The value returned is half the
/// largest gap between consecutive points of `E_k ∪ {0, 1}`; points below
/// `mesh` are dropped, which can only widen the first gap, by at most `mesh`.
///
/// The sets grow with `k`, so the distance is non-increasing in `k`.
pub fn weak_tangent_distance(alpha: f64, beta: f64, k: u32, mesh: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0, "ratios must lie in (0,1)");
    assert!(mesh > 0.0 && mesh < 1.0, "mesh must lie in (0,1)");
    let (la, lb) = (alpha.ln(), beta.ln());
    let floor = mesh.ln();
    let mut points = vec![0.0, 1.0];
    let mut m = 0u32;
    // log(α^m β^n) = m·la + n·lb with n from −k upward.
    while f64::from(m) * la >= floor + f64::from(k) * lb {
        let base = f64::from(m) * la;
        let mut n = -(k as i64);
        loop {
            let v = base + n as f64 * lb;
            if v < floor {
                break;
            }
            if v <= 0.0 {
                points.push((alpha.powi(m as i32) * beta.powi(n as i32)).min(1.0));
            }
            n += 1;
        }
        m += 1;
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let gap = points.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    gap / 2.0
}
