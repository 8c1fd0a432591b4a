use cherednik::field::GaloisField;
use cherednik::group::GroupSpec;
use cherednik::koszul::{columns, matrix_koszul_check, PolyMatrix};
use cherednik::lmodule::compute_l_specialized;
use cherednik::poly::parse_poly;
use cherednik::resolution::{graded_betti, Completeness, Presentation};
use cherednik::series::{geometric, tpoly_mul, tpoly_pow};
use cherednik::Fq;
use serde_json::Value;

fn parse_matrix(f: &GaloisField, v: &Value, n: usize) -> PolyMatrix<Fq> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|s| parse_poly(f, s.as_str().unwrap(), n).unwrap())
                .collect()
        })
        .collect()
}

fn text_matrix(f: &GaloisField, rows: &[&[String]], n: usize) -> PolyMatrix<Fq> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_poly(f, s, n).unwrap()).collect())
        .collect()
}

#[test]
fn g224_presentations() {
    let fx: Value = serde_json::from_str(include_str!("fixtures/g224_specht31.json")).unwrap();
    for p in [7u64, 11] {
        let f = GaloisField::for_generic(p, 2).unwrap();
        let mut mats: Vec<PolyMatrix<Fq>> = fx["scalar"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| parse_matrix(&f, m, 4))
            .collect();
        mats.extend(
            fx["byCharacteristic"][p.to_string()]
                .as_array()
                .unwrap()
                .iter()
                .map(|m| parse_matrix(&f, m, 4)),
        );

        let cols: Vec<Vec<_>> = mats.iter().flat_map(columns).map(|c| c.components).collect();
        assert_eq!(cols.len(), 12);
        let table = graded_betti(&f, &Presentation::columns(4, 3, cols), 12).unwrap();
        assert_eq!(table.ranks(), vec![3, 12, 18, 12, 3], "p = {p}\n{table}");
        assert_eq!(table.completeness, Completeness::Proven);

        let run = compute_l_specialized(&f, &GroupSpec::new(2, 2, 4).unwrap(), "specht:3,1", 0, &[1, 2], None).unwrap();
        let r = matrix_koszul_check(&f, &mats, 4, Some(&run.module), 12).unwrap();
        assert!(!r.commute);
        assert_eq!(r.regular, Some(false));
        assert_eq!(r.columns_in_j, Some(true));
        // the presentation uses a different basis of the representation
        assert!(r.alignment.is_some());
        assert_eq!(
            r.computed,
            Some(tpoly_mul(
                &[3],
                &tpoly_mul(&tpoly_pow(&geometric(2), 2), &tpoly_pow(&geometric(4), 2))
            ))
        );
    }
}

#[test]
fn gamma_zero_matrix_regular_sequence() {
    for (m, p) in [(3u32, 7u64), (4, 5)] {
        let f = GaloisField::for_generic(p, m).unwrap();
        let s = format!("x^{m} + y^{m} + z^{m}");
        let (xm, ym, zm) = (format!("-x^{m}"), format!("y^{m}"), format!("z^{m}"));
        let z = "0".to_string();
        let xyz = "xyz".to_string();
        let mats = vec![
            text_matrix(&f, &[&[xyz.clone(), z.clone()], &[z.clone(), xyz]], 3),
            text_matrix(&f, &[&[s.clone(), z.clone()], &[z, s]], 3),
            text_matrix(&f, &[&[xm.clone(), ym], &[zm, xm]], 3),
        ];
        let run = compute_l_specialized(&f, &GroupSpec::new(m, m, 3).unwrap(), "gamma:0", 0, &[3, 4], None).unwrap();
        let r = matrix_koszul_check(&f, &mats, 3, Some(&run.module), 4 * m + 4).unwrap();
        assert!(r.commute, "{r:?}");
        assert_eq!(r.regular, Some(true));
        assert_eq!(r.det_degrees, vec![Some(6), Some(2 * m), Some(2 * m)]);
        assert_eq!(r.columns_in_j, Some(true));
        assert_eq!(r.alignment, None);
        let want = tpoly_mul(&[2, 2, 2], &tpoly_pow(&geometric(m), 2));
        assert_eq!(r.predicted.as_ref(), Some(&want));
        assert_eq!(r.series_match, Some(true));
    }
}
