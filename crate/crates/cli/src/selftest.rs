//! Fast self-contained checks of the core invariants, printed as a
//! pass/fail table.

use mkcs_core::census::lemma2_sweep;
use mkcs_core::lang::{collect_up_to, Language};
use mkcs_core::walsh::hadamard;

struct Check {
    name: &'static str,
    run: fn() -> Result<(), String>,
}

const CHECKS: &[Check] = &[
    Check {
        name: "codec round-trip (n in 2..4, codes <= 12 bits)",
        run: codec_round_trip,
    },
    Check {
        name: "prefix-freeness (n = 4, codes <= 10 bits)",
        run: prefix_free_small,
    },
    Check {
        name: "annihilator bound sweep (n <= 3, grid 1)",
        run: annihilator_sweep,
    },
    Check {
        name: "hadamard orthogonality (orders <= 16)",
        run: hadamard_orthogonality,
    },
];

fn codec_round_trip() -> Result<(), String> {
    for n in [2usize, 3, 4] {
        let lang = Language::new(n).map_err(|e| e.to_string())?;
        let items = collect_up_to(&lang, 12).map_err(|e| e.to_string())?;
        if items.is_empty() {
            return Err(format!("enumeration for n = {n} is empty"));
        }
        for item in items {
            let decoded = lang.decode_exact(&item.bits).map_err(|e| e.to_string())?;
            if decoded != item.program {
                return Err(format!("decode(encode(p)) != p for {}", item.program));
            }
            let encoded = lang.encode(&item.program).map_err(|e| e.to_string())?;
            if encoded != item.bits {
                return Err(format!("encode not stable for {}", item.program));
            }
            let value = lang.eval(&item.program).map_err(|e| e.to_string())?;
            if value != item.vector {
                return Err(format!("eval mismatch for {}", item.program));
            }
        }
    }
    Ok(())
}

fn prefix_free_small() -> Result<(), String> {
    let lang = Language::new(4).map_err(|e| e.to_string())?;
    let mut codes: Vec<String> = collect_up_to(&lang, 10)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|item| item.bits.to_string())
        .collect();
    codes.sort();
    for pair in codes.windows(2) {
        if pair[0] == pair[1] {
            return Err(format!("duplicate code {}", pair[0]));
        }
        if pair[1].starts_with(pair[0].as_str()) {
            return Err(format!("{} is a prefix of {}", pair[0], pair[1]));
        }
    }
    Ok(())
}

fn annihilator_sweep() -> Result<(), String> {
    for n in [2usize, 3] {
        let report = lemma2_sweep(n, 1).map_err(|e| e.to_string())?;
        if !report.pass {
            return Err(format!("annihilator count exceeded the bound at n = {n}"));
        }
        if !report.bound_attained {
            return Err(format!("bound 2^{} not attained at n = {n}", n - 1));
        }
    }
    Ok(())
}

fn hadamard_orthogonality() -> Result<(), String> {
    for k in 0..=4u32 {
        let h = hadamard(k).map_err(|e| e.to_string())?;
        let n = h.n() as i64;
        for i in 0..h.d() {
            for j in 0..h.d() {
                let dot: i64 = h.row(i).iter().zip(h.row(j)).map(|(&a, &b)| a * b).sum();
                let want = if i == j { n } else { 0 };
                if dot != want {
                    return Err(format!("order {n}: rows {i},{j} dot {dot}, want {want}"));
                }
            }
        }
    }
    Ok(())
}

/// Runs every check, prints the table, and reports overall success.
pub fn run() -> bool {
    let width = CHECKS.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut all_ok = true;
    println!("{:width$}  status", "check");
    for check in CHECKS {
        match (check.run)() {
            Ok(()) => println!("{:width$}  pass", check.name),
            Err(why) => {
                all_ok = false;
                println!("{:width$}  FAIL: {why}", check.name);
            }
        }
    }
    all_ok
}
