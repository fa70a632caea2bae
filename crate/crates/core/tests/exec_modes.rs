use mmm_core::cohomology::PieceKind;
use mmm_core::derivation::{operator_matrix_with, OperatorKind};
use mmm_core::exec::{map_vec, Exec};
use mmm_core::tor::{builtin, module_from_cohomology_with, module_from_presentation, tor_dims_with};

#[test]
fn map_vec_keeps_order() {
    let xs: Vec<u64> = (0..1000).collect();
    let a = map_vec(Exec::Parallel, xs.clone(), |x| x * x);
    let b = map_vec(Exec::Sequential, xs, |x| x * x);
    assert_eq!(a, b);
}

#[test]
fn modes_agree() {
    for (d, i) in [(3u32, 9u32), (5, 12), (6, 14)] {
        for kind in [OperatorKind::ContractionD, OperatorKind::MultM11] {
            let a = operator_matrix_with(Exec::Parallel, kind, d, i);
            let b = operator_matrix_with(Exec::Sequential, kind, d, i);
            assert_eq!(a.to_json(), b.to_json());
        }
    }
    let a = module_from_cohomology_with(Exec::Parallel, 5, PieceKind::Cokernel, 10).unwrap();
    let b = module_from_cohomology_with(Exec::Sequential, 5, PieceKind::Cokernel, 10).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let m = module_from_presentation(&builtin("d5-coker").unwrap(), 16).unwrap();
    assert_eq!(tor_dims_with(Exec::Parallel, &m, 4, 16), tor_dims_with(Exec::Sequential, &m, 4, 16));
}
