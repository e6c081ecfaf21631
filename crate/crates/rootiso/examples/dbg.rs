use num_bigint::BigInt;
use rootiso::poly::IntPolynomial;

fn main() {
    let a = IntPolynomial::from_i64_coeffs(&[-1, 2]);
    let b = IntPolynomial::new(vec![
        BigInt::from(-(1i64 << 39) - 1),
        BigInt::from(1i64 << 40),
    ]);
    let f = a.mul(&b);
    for prec in [32u32, 64, 128, 256] {
        match rootiso::analysis::numeric_roots(&f, prec) {
            Ok(set) => println!("prec {prec}: ok, final={}, gap={:e}", set.precision_bits,
                (set.approx(0) - set.approx(1)).norm()),
            Err(e) => println!("prec {prec}: err {e}"),
        }
    }
}
