//! Finite words over small alphabets: Lyndon enumeration and cyclic search.

/// All Lyndon words over the sorted `alphabet` with length `1..=max_len`,
/// in lexicographic order (Duval's generation algorithm).
///
/// Every purely periodic sequence is a shift of the repetition of exactly
/// one Lyndon word, so these cover all periodic tails without duplicates.
pub fn lyndon_words(alphabet: &[u32], max_len: usize) -> Vec<Vec<u32>> {
    let mut alphabet = alphabet.to_vec();
    alphabet.sort_unstable();
    alphabet.dedup();
    let mut out = Vec::new();
    if alphabet.is_empty() || max_len == 0 {
        return out;
    }
    let k = alphabet.len();
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        out.push(w.iter().map(|&i| alphabet[i]).collect());
        let base = w.len();
        while w.len() < max_len {
            let c = w[w.len() - base];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Whether `pattern` occurs as a factor of the bi-infinite repetition of `period`.
pub fn occurs_cyclically(period: &[u32], pattern: &[u32]) -> bool {
    if period.is_empty() {
        return false;
    }
    if pattern.is_empty() {
        return true;
    }
    let p = period.len();
    (0..p).any(|start| pattern.iter().enumerate().all(|(i, &d)| period[(start + i) % p] == d))
}

/// `σ^ℓ w`: the word read from position `ℓ` cyclically.
pub fn rotate(word: &[u32], shift: usize) -> Vec<u32> {
    let mut out = word.to_vec();
    if !out.is_empty() {
        let s = shift % out.len();
        out.rotate_left(s);
    }
    out
}

pub fn reversed(word: &[u32]) -> Vec<u32> {
    word.iter().rev().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_lyndon(w: &[u32]) -> bool {
        (1..w.len()).all(|s| w < &rotate(w, s)[..])
    }

    #[test]
    fn binary_lyndon_counts() {
        // necklace counting: 2, 1, 2, 3, 6, 9, 18, 30 primitive binary necklaces
        let words = lyndon_words(&[2, 3], 8);
        let mut by_len = [0usize; 9];
        for w in &words {
            by_len[w.len()] += 1;
        }
        assert_eq!(&by_len[1..], &[2, 1, 2, 3, 6, 9, 18, 30]);
        assert!(words.iter().all(|w| is_lyndon(w)));
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn ternary_lyndon_brute_force() {
        let words = lyndon_words(&[4, 2, 3], 5);
        let mut brute = Vec::new();
        for len in 1..=5u32 {
            for code in 0..3u32.pow(len) {
                let w: Vec<u32> = (0..len).map(|i| 2 + (code / 3u32.pow(len - 1 - i)) % 3).collect();
                if is_lyndon(&w) {
                    brute.push(w);
                }
            }
        }
        brute.sort();
        assert_eq!(words, brute);
    }

    #[test]
    fn cyclic_occurrence() {
        assert!(occurs_cyclically(&[2, 4, 2, 2], &[2, 2, 4]));
        assert!(occurs_cyclically(&[3], &[3, 3, 3, 3]));
        assert!(!occurs_cyclically(&[2, 3], &[2, 2]));
    }

    #[test]
    fn rotations() {
        assert_eq!(rotate(&[3, 2, 2], 1), vec![2, 2, 3]);
        assert_eq!(rotate(&[3, 2, 2], 3), vec![3, 2, 2]);
        assert_eq!(reversed(&[3, 2, 2]), vec![2, 2, 3]);
    }
}
