/// Generalised Laguerre polynomial `L_k^a(x)` by the three-term recurrence.
pub fn laguerre(k: u32, a: u32, x: f64) -> f64 {
    let a = a as f64;
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + a - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
