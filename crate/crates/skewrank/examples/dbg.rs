use skewrank::gf::Tower;
use skewrank::skew::SkewPoly;

fn main() {
    let t = Tower::build(5, 1, 3).unwrap();
    // try every primitive element delta = gamma^m as the log base
    for m in 1..124u64 {
        if gcd(m, 124) != 1 {
            continue;
        }
        let d = t.gamma_pow(m as i64);
        let g = SkewPoly::from_coeffs(
            t.clone(),
            vec![
                t.one(),
                t.pow(&d, 63),
                t.pow(&d, 29),
                t.pow(&d, 55),
                t.one(),
            ],
        );
        let dv: Vec<usize> = (1..5)
            .map(|i| g.lambda_value(&t.from_prime(i)).unwrap())
            .collect();
        if dv == vec![1, 0, 1, 0] {
            println!("m = {m}: d-values match (1,0,1,0)");
            // minimal polynomial check: is delta a root of y^3+3y+3?
            let v = t.add(
                &t.add(&t.pow(&d, 3), &t.mul(&t.from_prime(3), &d)),
                &t.from_prime(3),
            );
            println!("  delta^3+3delta+3 = {} (zero means root)", t.fmt_elem(&v));
        }
    }
    println!("scan done");
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
