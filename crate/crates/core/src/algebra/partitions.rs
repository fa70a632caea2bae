/// A weighted partition: pairs `(i, j)` with `j >= 1`, `i + j >= 2`, listed with
/// `j` non-increasing and `i` non-increasing among equal `j`.
pub type Partition = Vec<(u32, u32)>;

/// Weighted partitions of `d` whose class has cohomological degree `degree`.
///
/// Output order: descending lexicographic on the `(j, i)` sequences. With
/// `avoid_11` set, partitions containing `(1, 1)` are dropped.
pub fn weighted_partitions(d: u32, degree: u32, avoid_11: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    // parts are generated in descending (j, i) order
    go(d, degree, (u32::MAX, u32::MAX), avoid_11, &mut cur, &mut out);
    out
}

fn go(
    wt: u32,
    deg: u32,
    bound: (u32, u32),
    avoid_11: bool,
    cur: &mut Partition,
    out: &mut Vec<Partition>,
) {
    if wt == 0 {
        if deg == 0 {
            out.push(cur.clone());
        }
        return;
    }
    for j in (1..=wt.min(bound.0)).rev() {
        let imax_deg = if deg + 2 >= j { (deg + 2 - j) / 2 } else { continue };
        let imax = if j == bound.0 { imax_deg.min(bound.1) } else { imax_deg };
        for i in (0..=imax).rev() {
            if i + j < 2 || (avoid_11 && i == 1 && j == 1) {
                continue;
            }
            let pdeg = 2 * i + j - 2;
            cur.push((i, j));
            go(wt - j, deg - pdeg, (j, i), avoid_11, cur, out);
            cur.pop();
        }
    }
}
