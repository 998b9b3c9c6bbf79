use horotile_core::MMatrix;

pub fn brute(stored: &[(i64, i64, usize)], lo: i64, hi: i64) -> Vec<usize> {
    let mut v: Vec<_> = stored.iter().filter(|s| s.0 <= hi && lo <= s.1).map(|s| s.2).collect();
    v.sort();
    v
}

pub fn all_words(generators: usize, max_len: usize) -> Vec<String> {
    let letters: Vec<char> =
        (0..generators).flat_map(|i| [(b'a' + i as u8) as char, (b'A' + i as u8) as char]).collect();
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &c in &letters {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn matrices_equal(a: &MMatrix, b: &MMatrix) -> Option<bool> {
    let mut all = true;
    for j in 0..4 {
        let (ca, cb) = (a.column(j), b.column(j));
        for i in 0..4 {
            let d = ca.0[i].sub(&cb.0[i]);
            if !d.contains_zero() {
                return Some(false);
            }
            all &= d.width_f64() < 1e-100;
        }
    }
    all.then_some(true)
}
