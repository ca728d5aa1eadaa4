/// Fixed-point rendering with ten significant digits; zero prints as
/// `0.0000000`.
pub fn significant10(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals = |v: f64| (9 - v.abs().log10().floor() as i32).max(0) as usize;
    let d = decimals(x);
    let s = format!("{x:.d$}");
    // rounding can carry into the next decade, e.g. 99.999999999 -> 100.00000000
    let rounded: f64 = s.parse().unwrap_or(x);
    let d2 = decimals(rounded);
    if d2 < d {
        format!("{x:.d2$}")
    } else {
        s
    }
}
