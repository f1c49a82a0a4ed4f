//! Helpers shared by the integration suites: a small deterministic
//! generator, a trace fuzzer, an XML well-formedness checker, and
//! golden-file comparison.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use gradbench_core::trace::{EvalCounters, IterationRecord, Termination, Trace};
use gradbench_core::{Method, Vec2};

/// SplitMix64. Good enough to scatter test inputs, trivially seedable.
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

const FUZZ_FUNCTIONS: [&str; 4] = ["rosenbrock", "spring", "ackley", "himmelblau"];

/// Build an arbitrary trace that satisfies [`Trace::validate`]: records are
/// chained with the exact step algebra the validator replays, and the last
/// record rests with a zero step. Every 17th seed produces the one legal
/// empty shape (no records, non-finite termination).
pub fn fuzz_trace(seed: u64) -> Trace {
    let mut rng = SplitMix::new(seed);
    let function_name = FUZZ_FUNCTIONS[(rng.next_u64() % 4) as usize].to_string();
    let method = Method::ALL[(rng.next_u64() % Method::ALL.len() as u64) as usize];
    let x0 = Vec2::new(rng.in_range(-5.0, 5.0), rng.in_range(-5.0, 5.0));
    let counters = EvalCounters {
        n_f: rng.next_u64() % 10_000,
        n_grad: rng.next_u64() % 10_000,
        n_hess: rng.next_u64() % 1_000,
    };

    if seed % 17 == 0 {
        return Trace {
            function_name,
            method,
            x0,
            records: Vec::new(),
            termination: Termination::NonFiniteValue,
            counters,
        };
    }

    let steps = (rng.next_u64() % 30) as usize;
    let mut records = Vec::with_capacity(steps + 1);
    let mut point = x0;
    for k in 0..steps {
        let f_value = rng.in_range(-1e3, 1e3);
        let grad = Vec2::new(rng.in_range(-10.0, 10.0), rng.in_range(-10.0, 10.0));
        let direction = Vec2::new(rng.in_range(-2.0, 2.0), rng.in_range(-2.0, 2.0));
        // Occasionally a refused step: alpha 0, point unchanged.
        let alpha = if rng.next_u64() % 8 == 0 { 0.0 } else { rng.in_range(0.0, 1.5) };
        records.push(
            IterationRecord::new(k, point, f_value, grad, direction, alpha)
                .expect("fuzzed inputs are finite"),
        );
        // Same expression the validator replays.
        point = point + direction * alpha;
    }
    let f_value = rng.in_range(-1e3, 1e3);
    let grad = Vec2::new(rng.in_range(-10.0, 10.0), rng.in_range(-10.0, 10.0));
    records.push(
        IterationRecord::new(steps, point, f_value, grad, Vec2::ZERO, 0.0)
            .expect("fuzzed inputs are finite"),
    );

    let endings = [
        Termination::GradToleranceMet,
        Termination::StepToleranceMet,
        Termination::MaxIterReached,
        Termination::LineSearchFailed,
        Termination::SingularHessian,
    ];
    let termination = endings[(rng.next_u64() % 5) as usize];

    let trace = Trace { function_name, method, x0, records, termination, counters };
    trace.validate().expect("fuzzed trace is structurally sound");
    trace
}

/// Field-by-field bit equality, stricter than `==` (distinguishes 0.0
/// from -0.0 and compares NaN payloads, though fuzzed traces hold neither).
pub fn assert_trace_bits_equal(a: &Trace, b: &Trace) {
    let bits = |v: f64| v.to_bits();
    assert_eq!(a.function_name, b.function_name);
    assert_eq!(a.method, b.method);
    assert_eq!(bits(a.x0.x), bits(b.x0.x));
    assert_eq!(bits(a.x0.y), bits(b.x0.y));
    assert_eq!(a.termination, b.termination);
    assert_eq!(a.counters, b.counters);
    assert_eq!(a.records.len(), b.records.len());
    for (ra, rb) in a.records.iter().zip(&b.records) {
        assert_eq!(ra.k, rb.k);
        assert_eq!(bits(ra.point.x), bits(rb.point.x));
        assert_eq!(bits(ra.point.y), bits(rb.point.y));
        assert_eq!(bits(ra.f_value), bits(rb.f_value));
        assert_eq!(bits(ra.grad.x), bits(rb.grad.x));
        assert_eq!(bits(ra.grad.y), bits(rb.grad.y));
        assert_eq!(bits(ra.grad_norm), bits(rb.grad_norm));
        assert_eq!(bits(ra.direction.x), bits(rb.direction.x));
        assert_eq!(bits(ra.direction.y), bits(rb.direction.y));
        assert_eq!(bits(ra.alpha), bits(rb.alpha));
    }
}

/// Check that `text` is a single well-formed XML document: one root
/// element, matched tags, quoted attributes, and no stray `<` or `&`.
pub fn check_xml(text: &str) -> Result<(), String> {
    let b = text.as_bytes();
    let mut i = 0usize;
    let mut stack: Vec<String> = Vec::new();
    let mut roots = 0usize;

    fn is_name_start(c: u8) -> bool {
        c.is_ascii_alphabetic() || c == b'_' || c == b':'
    }
    fn is_name_char(c: u8) -> bool {
        c.is_ascii_alphanumeric() || matches!(c, b'_' | b':' | b'-' | b'.')
    }
    fn scan_entity(b: &[u8], at: usize) -> Result<usize, String> {
        // b[at] == '&'
        let mut j = at + 1;
        if j < b.len() && b[j] == b'#' {
            j += 1;
            let digits = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            if j == digits {
                return Err(format!("empty character reference at byte {at}"));
            }
        } else {
            let letters = j;
            while j < b.len() && b[j].is_ascii_alphabetic() {
                j += 1;
            }
            if j == letters {
                return Err(format!("bare '&' at byte {at}"));
            }
        }
        if j < b.len() && b[j] == b';' {
            Ok(j + 1)
        } else {
            Err(format!("unterminated entity at byte {at}"))
        }
    }

    while i < b.len() {
        if b[i] == b'<' {
            if i + 3 < b.len() && &b[i..i + 4] == b"<!--" {
                match text[i + 4..].find("-->") {
                    Some(off) => i = i + 4 + off + 3,
                    None => return Err(format!("unterminated comment at byte {i}")),
                }
                continue;
            }
            if i + 1 < b.len() && b[i + 1] == b'?' {
                match text[i + 2..].find("?>") {
                    Some(off) => i = i + 2 + off + 2,
                    None => return Err(format!("unterminated declaration at byte {i}")),
                }
                continue;
            }
            if i + 1 < b.len() && b[i + 1] == b'!' {
                match text[i + 2..].find('>') {
                    Some(off) => i = i + 2 + off + 1,
                    None => return Err(format!("unterminated '<!' section at byte {i}")),
                }
                continue;
            }
            let closing = i + 1 < b.len() && b[i + 1] == b'/';
            let mut j = if closing { i + 2 } else { i + 1 };
            if j >= b.len() || !is_name_start(b[j]) {
                return Err(format!("malformed tag at byte {i}"));
            }
            let name_start = j;
            while j < b.len() && is_name_char(b[j]) {
                j += 1;
            }
            let name = &text[name_start..j];
            if closing {
                while j < b.len() && b[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j >= b.len() || b[j] != b'>' {
                    return Err(format!("malformed closing tag </{name}> at byte {i}"));
                }
                match stack.pop() {
                    Some(open) if open == name => {}
                    Some(open) => {
                        return Err(format!("</{name}> closes <{open}> at byte {i}"))
                    }
                    None => return Err(format!("</{name}> with nothing open at byte {i}")),
                }
                i = j + 1;
                continue;
            }
            // Attributes.
            loop {
                while j < b.len() && b[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j >= b.len() {
                    return Err(format!("unterminated tag <{name}> at byte {i}"));
                }
                if b[j] == b'>' {
                    if stack.is_empty() {
                        roots += 1;
                    }
                    stack.push(name.to_string());
                    j += 1;
                    break;
                }
                if b[j] == b'/' {
                    if j + 1 < b.len() && b[j + 1] == b'>' {
                        if stack.is_empty() {
                            roots += 1;
                        }
                        j += 2;
                        break;
                    }
                    return Err(format!("stray '/' in <{name}> at byte {j}"));
                }
                if !is_name_start(b[j]) {
                    return Err(format!("bad attribute name in <{name}> at byte {j}"));
                }
                while j < b.len() && is_name_char(b[j]) {
                    j += 1;
                }
                while j < b.len() && b[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j >= b.len() || b[j] != b'=' {
                    return Err(format!("attribute without '=' in <{name}> at byte {j}"));
                }
                j += 1;
                while j < b.len() && b[j].is_ascii_whitespace() {
                    j += 1;
                }
                if j >= b.len() || (b[j] != b'"' && b[j] != b'\'') {
                    return Err(format!("unquoted attribute value in <{name}> at byte {j}"));
                }
                let quote = b[j];
                j += 1;
                while j < b.len() && b[j] != quote {
                    match b[j] {
                        b'<' => return Err(format!("raw '<' inside attribute at byte {j}")),
                        b'&' => j = scan_entity(b, j)?,
                        _ => j += 1,
                    }
                }
                if j >= b.len() {
                    return Err(format!("unterminated attribute value in <{name}>"));
                }
                j += 1;
            }
            i = j;
            continue;
        }
        match b[i] {
            b'&' => i = scan_entity(b, i)?,
            b'>' => return Err(format!("stray '>' at byte {i}")),
            c => {
                if stack.is_empty() && roots > 0 && !c.is_ascii_whitespace() {
                    return Err(format!("text after the root element at byte {i}"));
                }
                if stack.is_empty() && roots == 0 && !c.is_ascii_whitespace() {
                    return Err(format!("text before the root element at byte {i}"));
                }
                i += 1;
            }
        }
    }
    if let Some(open) = stack.pop() {
        return Err(format!("<{open}> never closed"));
    }
    if roots != 1 {
        return Err(format!("expected exactly one root element, found {roots}"));
    }
    Ok(())
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compare `produced` against the frozen copy in `tests/golden/`.
/// Set `GRADBENCH_UPDATE_GOLDEN=1` to rewrite the frozen copies instead.
pub fn golden_check(name: &str, produced: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("GRADBENCH_UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).expect("create golden dir");
        fs::write(&path, produced).expect("write golden file");
        eprintln!("updated golden {}", path.display());
        return;
    }
    let frozen = fs::read_to_string(&path).unwrap_or_else(|e| {
        panic!(
            "missing golden file {} ({e}); run with GRADBENCH_UPDATE_GOLDEN=1 to create it",
            path.display()
        )
    });
    if frozen != produced {
        let at = frozen
            .bytes()
            .zip(produced.bytes())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| frozen.len().min(produced.len()));
        let lo = at.saturating_sub(40);
        let frozen_ctx = &frozen[lo..(at + 40).min(frozen.len())];
        let produced_ctx = &produced[lo..(at + 40).min(produced.len())];
        panic!(
            "golden mismatch for {name} at byte {at} (frozen {} bytes, produced {} bytes)\n\
             frozen:   ...{frozen_ctx}...\n\
             produced: ...{produced_ctx}...",
            frozen.len(),
            produced.len(),
        );
    }
}
