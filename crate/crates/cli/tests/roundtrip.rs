use ellbundle_cli::{parse_job, print_job, Job, Presentation};
use ellbundle_core::elliptic::{Curve, Divisor, Place, Point};
use ellbundle_core::funcspace::CurveFunction;
use ellbundle_core::galois::{Field, Poly};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn curve(rng: &mut ChaCha8Rng, p: u64, k: usize) -> Curve {
    let f = Field::with_degree(p, k).unwrap();
    loop {
        if let Ok(e) = Curve::new(&f, f.random(rng), f.random(rng)) {
            return e;
        }
    }
}

fn divisor(rng: &mut ChaCha8Rng, e: &Curve) -> Divisor {
    let pts = e.points();
    let mut d = Divisor::zero();
    for _ in 0..rng.gen_range(0..4) {
        d.add_term(Place::from_point(e, pts.choose(rng).unwrap()), rng.gen_range(-3..=3));
    }
    d
}

fn poly(rng: &mut ChaCha8Rng, e: &Curve, deg: usize) -> Poly {
    Poly::new(e.field(), (0..=deg).map(|_| e.field().random(rng)).collect())
}

fn function(rng: &mut ChaCha8Rng, e: &Curve) -> CurveFunction {
    let num = CurveFunction::from_polys(e, poly(rng, e, 3), poly(rng, e, 2));
    let mut h = poly(rng, e, 2);
    if h.is_zero() {
        h = Poly::one(e.field());
    }
    num.div(&CurveFunction::from_poly(e, h)).unwrap()
}

fn random_job(seed: u64) -> Job {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = *[5u64, 7, 11, 13].choose(&mut rng).unwrap();
    let k = if rng.gen_bool(0.25) { 2 } else { 1 };
    let e = curve(&mut rng, p, k);
    let mark = if rng.gen_bool(0.5) { Point::Infinity } else { e.points().choose(&mut rng).unwrap().clone() };
    let m = rng.gen_range(1..4);
    let divs = |rng: &mut ChaCha8Rng| (0..m).map(|_| divisor(rng, &e)).collect::<Vec<_>>();
    let fns = |rng: &mut ChaCha8Rng| (0..m).map(|_| function(rng, &e)).collect::<Vec<_>>();
    let presentation = match rng.gen_range(0..4) {
        0 => Presentation::None,
        1 => Presentation::DirectSum { summands: divs(&mut rng) },
        2 => Presentation::Kernel { ambient: divs(&mut rng), target: divisor(&mut rng, &e), g: fns(&mut rng) },
        _ => {
            let s = rng.gen_range(1..3);
            Presentation::Monad {
                ambient: divs(&mut rng),
                target: divisor(&mut rng, &e),
                g: fns(&mut rng),
                f: (0..m).map(|_| (0..s).map(|_| function(&mut rng, &e)).collect()).collect(),
            }
        }
    };
    let twist = rng.gen_bool(0.5).then(|| divisor(&mut rng, &e));
    let div = rng.gen_bool(0.5).then(|| divisor(&mut rng, &e));
    Job { curve: e, mark, presentation, twist, divisor: div }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_print_parse(seed in any::<u64>()) {
        let job = random_job(seed);
        let text = print_job(&job);
        let back = parse_job(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &job);
        prop_assert_eq!(print_job(&back), text);
    }
}
