//! Independent dimension count from the generating function
//! `prod_g 1 / (1 - t^deg(g) s^wt(g))`, truncated to a box.

/// Coefficient table `c[degree][weight]` for degree <= `max_deg`, weight <= `max_wt`.
pub fn hilbert_table(max_deg: u32, max_wt: u32) -> Vec<Vec<u64>> {
    let (dd, ww) = (max_deg as usize, max_wt as usize);
    let mut c = vec![vec![0u64; ww + 1]; dd + 1];
    c[0][0] = 1;
    let mut factors: Vec<(usize, usize)> = Vec::new();
    // e_i: t^{2i}
    let mut i = 1;
    while 2 * i <= dd {
        factors.push((2 * i, 0));
        i += 1;
    }
    // twisted classes of weight w, degree 2a + w - 2
    for w in 1..=ww {
        let a0 = if w >= 2 { 0 } else { 1 };
        let mut a = a0;
        while 2 * a + w - 2 <= dd {
            factors.push((2 * a + w - 2, w));
            a += 1;
        }
    }
    // multiply by 1/(1 - t^a s^b) = sum_k t^{ka} s^{kb}
    for (a, b) in factors {
        for d in a..=dd {
            for w in b..=ww {
                c[d][w] += c[d - a][w - b];
            }
        }
    }
    c
}

pub fn hilbert_count(b: super::Bidegree) -> u64 {
    hilbert_table(b.degree, b.weight)[b.degree as usize][b.weight as usize]
}

/// Number of monomials in the `e_i` of total degree `degree`.
pub fn e_monomial_count(degree: u32) -> u64 {
    hilbert_table(degree, 0)[degree as usize][0]
}
