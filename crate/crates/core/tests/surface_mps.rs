use hypspec::geometry::*;
use hypspec::gsvd;
use hypspec::surface_mps::*;

/// Leading rows of the published Bolza table.
const BOLZA: [(f64, usize); 8] = [
    (3.838_887_258_842_199_5, 3),
    (5.353_601_341_189_050_4, 4),
    (8.249_554_815_200_658, 2),
    (14.726_216_787_788_832, 4),
    (15.048_916_133_267_049, 3),
    (18.658_819_627_260_194, 3),
    (20.519_859_734_142_002, 4),
    (23.078_558_481_381_635, 1),
];

fn bolza(n: usize, lambda_hi: f64) -> (SurfaceDecomposition, BasisSpec, CollocationSet) {
    let dec = assemble_surface(&FenchelNielsen::bolza_mw()).unwrap();
    let basis = BasisSpec::new(n, dec.pieces.len());
    let coll = dec.collocate(default_density(&dec, &basis, lambda_hi, 1.5)).unwrap();
    (dec, basis, coll)
}

#[test]
fn system_shapes() {
    let (dec, basis, coll) = bolza(8, 10.0);
    let (q, r) = build_system(&dec, &basis, &coll, 2.0).unwrap();
    let pts = coll.points.len();
    assert_eq!((q.nrows(), q.ncols()), (2 * pts, 2 * 17 * 2));
    assert_eq!((r.nrows(), r.ncols()), (4 * pts, 2 * 17 * 2));
}

#[test]
fn first_three_eigenvalues() {
    let (dec, basis, coll) = bolza(24, 9.0);
    let recs = find_eigenvalues(&dec, &basis, &coll, (3.5, 9.0), 0.05, &SearchOptions::default()).unwrap();
    assert_eq!(recs.len(), 3, "{recs:?}");
    for (r, &(lambda, mult)) in recs.iter().zip(&BOLZA) {
        assert_eq!(r.multiplicity, mult, "{r:?}");
        assert!((r.lambda - lambda).abs() < 1e-6, "{} vs {lambda}", r.lambda);
        assert!((r.lambda - lambda).abs() <= r.half_width, "{r:?}");
    }
}

#[test]
fn simple_eigenvalue_near_23() {
    let dec = assemble_surface(&FenchelNielsen::bolza_mw()).unwrap();
    let recs = find_eigenvalues_windowed(&dec, (22.0, 24.0), &WindowPlan::default(), &SearchOptions::default()).unwrap();
    assert_eq!(recs.len(), 1, "{recs:?}");
    assert_eq!(recs[0].multiplicity, 1);
    assert!((recs[0].lambda - BOLZA[7].0).abs() < 1e-6);
}

#[test]
fn sigma_dips_and_background() {
    let (dec, basis, coll) = bolza(24, 9.0);
    let opts = SearchOptions::default();
    let at = sigma(&dec, &basis, &coll, BOLZA[0].0, &opts).unwrap();
    let between = sigma(&dec, &basis, &coll, 4.5, &opts).unwrap();
    let zero = sigma(&dec, &basis, &coll, 0.0, &opts).unwrap();
    assert!(at[0] < 1e-6 && at[2] < 1e-6 && at[3] > 1e-3, "{at:?}");
    assert!(between[0] > 1e-2, "{between:?}");
    assert!(zero[0] < 1e-10, "{zero:?}");
}

#[test]
fn defect_decreases_with_basis_size() {
    let lambda = BOLZA[0].0;
    let defect = |n: usize| {
        let (dec, basis, coll) = bolza(n, 9.0);
        let (q, r) = build_system(&dec, &basis, &coll, lambda).unwrap();
        let g = gsvd::smallest_generalized_singulars(q.as_ref(), r.as_ref(), 1, gsvd::DEFAULT_TAU).unwrap();
        let jd = jump_defect(&dec, &basis, &coll, &g.vectors[0], lambda).unwrap();
        (g.sigma[0], jd.epsilon)
    };
    let (s12, e12) = defect(12);
    let (s16, e16) = defect(16);
    assert!(s16 < s12 && e16 < e12, "{s12} {s16} {e12} {e16}");
    // the defect and the singular value measure the same jump
    assert!(e16 < 10.0 * s16 + 1e-12);
}

#[test]
fn windowed_plan_sizes() {
    let plan = WindowPlan::default();
    assert_eq!(plan.n_for(9.0), 24);
    assert_eq!(plan.n_for(100.0), 45);
    assert_eq!(plan.n_for(215.0), 12 + (3.3f64 * 215f64.sqrt()).ceil() as usize);
}

#[test]
fn csv_rejects_unsorted() {
    let text = "lambda,multiplicity,sigma_min,half_width,basis_N\n5.0,1,0,0,24\n4.0,1,0,0,24\n";
    assert!(read_eigenvalues(text.as_bytes()).is_err());
    let ok = "lambda,multiplicity,sigma_min,half_width,basis_N\n4.0,1,0,0,24\n5.0,2,0,1e-9,24\n";
    let recs = read_eigenvalues(ok.as_bytes()).unwrap();
    let mut buf = Vec::new();
    write_eigenvalues(&mut buf, &recs).unwrap();
    assert_eq!(read_eigenvalues(buf.as_slice()).unwrap(), recs);
}

#[test]
fn close_pair_near_111_is_split() {
    // a 4-fold and a 2-fold eigenvalue about 5e-3 apart fall in one scan interval
    let (dec, basis, coll) = bolza(44, 112.0);
    let recs = find_eigenvalues(&dec, &basis, &coll, (110.95, 111.05), 0.03, &SearchOptions::default()).unwrap();
    let got: Vec<_> = recs.iter().map(|r| (r.lambda, r.multiplicity)).collect();
    assert_eq!(got.len(), 2, "{got:?}");
    assert_eq!((got[0].1, got[1].1), (4, 2), "{got:?}");
    assert!((got[0].0 - 110.998_561_914_7).abs() < 1e-6, "{got:?}");
    assert!((got[1].0 - 111.003_768_499_3).abs() < 1e-6, "{got:?}");
}
