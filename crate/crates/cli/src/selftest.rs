//! Reference examples recomputed from scratch.

use infimax_core::infimax::{infimax_prefix, InfimaxSource};
use infimax_core::minimax::{minimax, CountVector};
use infimax_core::regularity::cross_ratio_d;
use infimax_core::simplex::itinerary;
use infimax_core::substitution::{tower_prefix, AbelianMatrix};
use infimax_core::{Alphabet, ItinerarySpec, RationalPoint};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub status: &'static str,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &'static str, expected: &str, found: Result<String, String>) -> Check {
    let found = found.unwrap_or_else(|e| format!("error: {e}"));
    Check {
        name,
        pass: found == expected,
        expected: expected.to_string(),
        found,
    }
}

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

fn chain(counts: &[u64]) -> Result<String, String> {
    let alpha = CountVector::from_u64(counts).map_err(|e| e.to_string())?;
    Ok(alpha
        .chain()
        .iter()
        .map(|(v, _)| format!("({v})"))
        .collect::<Vec<_>>()
        .join("→"))
}

pub fn run() -> SelftestReport {
    let power = |counts: &[u64]| -> Result<String, String> {
        let alpha = CountVector::from_u64(counts).map_err(|e| e.to_string())?;
        minimax(&alpha)
            .power_form()
            .map(|p| p.to_string())
            .ok_or_else(|| "no power form".to_string())
    };
    let word = |counts: &[u64]| -> Result<String, String> {
        let alpha = CountVector::from_u64(counts).map_err(|e| e.to_string())?;
        minimax(&alpha)
            .word(1 << 16)
            .map(|w| w.to_string())
            .map_err(|e| e.to_string())
    };
    let checks = vec![
        check("minimax 24,3,14", "31(311)^10(312)^3", power(&[24, 3, 14])),
        check("minimax 2,3,1,3", "422234141", word(&[2, 3, 1, 3])),
        check(
            "chain 24,3,14",
            "(24,3,14)→(3,10,4)→(10,3,1)→(3,0,1)→(0,0,1)",
            chain(&[24, 3, 14]),
        ),
        check(
            "chain 2,3,1,3",
            "(2,3,1,3)→(3,1,2,1)→(1,2,0,1)→(2,0,0,1)→(0,0,0,1)",
            chain(&[2, 3, 1, 3]),
        ),
        check("itinerary 2/9,3/9,1/9,3/9", "0 3 1 2", {
            RationalPoint::from_ratios(&[(2, 9), (3, 9), (1, 9), (3, 9)])
                .map_err(|e| e.to_string())
                .map(|p| {
                    let it = itinerary(&p, 100);
                    let e: Vec<String> = it.entries.iter().map(ToString::to_string).collect();
                    e.join(" ")
                })
        }),
        check(
            "tower 1,0,10,3 at k=3",
            "31311311311311311311311311311311312312312",
            {
                let a = Alphabet::new(3).expect("k = 3");
                tower_prefix(&big(&[1, 0, 10, 3]), a, 1 << 10)
                    .map(|w| w.to_string())
                    .map_err(|e| e.to_string())
            },
        ),
        check(
            "infimax of 1 repeated, 64 letters",
            "3123113122312311311312311312231223123113122312311311312311311312",
            infimax_prefix(
                &InfimaxSource::Itinerary(ItinerarySpec::Periodic(big(&[1]))),
                3,
                64,
            )
            .map(|p| p.word.to_string())
            .map_err(|e| e.to_string()),
        ),
        check("d(A(1)^3)", "10", {
            let a = Alphabet::new(3).expect("k = 3");
            cross_ratio_d(&AbelianMatrix::product(&big(&[1, 1, 1]), a))
                .map(|d| d.to_string())
                .map_err(|e| e.to_string())
        }),
    ];
    let mut report = SelftestReport {
        checks,
        status: "pass",
    };
    if !report.passed() {
        report.status = "fail";
    }
    report
}
