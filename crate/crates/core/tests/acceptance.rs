//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any failed.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cliffchar::chars::matching::{match_matrices, match_tables};
use cliffchar::chars::{assemble_irr, corollary_suite, dixon_table, fischer_check, CliffordContext};
use cliffchar::cli::main_with_args;
use cliffchar::clifford::{clifford_order, enumerate_clifford, standard_generators, CliffordElement};
use cliffchar::dense::{self, DenseMatrix};
use cliffchar::inertia::{enumerate_inertia, is_in_inertia};
use cliffchar::linalg2::BitVec;
use cliffchar::pauli::{matrix_oracle, PauliCharacter, PauliElement};
use cliffchar::reference::{self, PrintedTable};
use cliffchar::symplectic::{enumerate_sp, sp_order};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["cliffchar", "--cache", "off", "--format", "json"];
    full.extend_from_slice(args);
    let mut out = Vec::new();
    let code = main_with_args(full, &mut out);
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    ensure!(code == 0, "`{}` exited with {code}: {text}", args.join(" "));
    serde_json::from_str(&text).map_err(|e| format!("bad JSON from `{}`: {e}", args.join(" ")))
}

/// A table as emitted by the CLI: class sizes and integer rows.
struct Emitted {
    order: u64,
    sizes: Vec<u64>,
    labels: Vec<String>,
    rows: Vec<Vec<i64>>,
}

fn emitted(v: &Value) -> Result<Emitted, String> {
    let sizes = v["classes"]
        .as_array()
        .ok_or("missing classes")?
        .iter()
        .map(|c| c["size"].as_u64().ok_or("bad class size"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for ch in v["characters"].as_array().ok_or("missing characters")? {
        labels.push(ch["label"].as_str().unwrap_or("").to_string());
        let row = ch["values"]
            .as_array()
            .ok_or("missing values")?
            .iter()
            .map(|x| x.as_str().and_then(|s| s.parse::<i64>().ok()).ok_or(format!("non-integer value {x}")))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Emitted {
        order: v["group"]["order"].as_u64().ok_or("missing order")?,
        sizes,
        labels,
        rows,
    })
}

/// Exact row and column orthogonality of an integer table.
fn orthogonality(t: &Emitted) -> Result<(), String> {
    let k = t.sizes.len();
    let g = t.order as i64;
    for (i, a) in t.rows.iter().enumerate() {
        for (j, b) in t.rows.iter().enumerate() {
            let s: i64 = (0..k).map(|c| t.sizes[c] as i64 * a[c] * b[c]).sum();
            ensure!(s == if i == j { g } else { 0 }, "rows {i},{j}: inner product {s}");
        }
    }
    for c in 0..k {
        for d in 0..k {
            let s: i64 = t.rows.iter().map(|r| r[c] * r[d]).sum();
            let want = if c == d { g / t.sizes[c] as i64 } else { 0 };
            ensure!(s == want, "columns {c},{d}: sum {s}, want {want}");
        }
    }
    Ok(())
}

/// Multiset of `(class size, value)` pairs of a row.
fn weighted_multiset(values: &[i64], sizes: &[u64]) -> BTreeMap<(u64, i64), usize> {
    let mut m = BTreeMap::new();
    for (&v, &s) in values.iter().zip(sizes) {
        *m.entry((s, v)).or_default() += 1;
    }
    m
}

fn printed_matrix(p: &PrintedTable) -> Vec<Vec<i64>> {
    p.rows.iter().map(|r| r.values.clone()).collect()
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let t = start.elapsed();
    ensure!(t < limit, "took {:.2?}, limit {:?}", t, limit);
    Ok(format!("{t:.2?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = emitted(&cli_json(&["chartable", "--n", "1"])?)?;
    let took = within(Duration::from_secs(1), start)?;
    let printed = reference::c1();
    let sizes = printed.implied_class_sizes().map_err(|e| e.to_string())?;
    ensure!(
        match_matrices(&t.rows, &t.sizes, &printed_matrix(&printed), &sizes).is_some(),
        "no row/column bijection onto the printed table"
    );
    let mut degrees: Vec<i64> = t.rows.iter().map(|r| r[0]).collect();
    degrees.sort_unstable();
    ensure!(degrees == [1, 1, 2, 3, 3], "degrees {degrees:?}");
    Ok(format!("5×5 table equals the printed one up to permutation, {took}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let t = emitted(&cli_json(&["chartable", "--n", "2"])?)?;
    let took = within(Duration::from_secs(60), start)?;
    ensure!(t.rows.len() == 21, "{} rows", t.rows.len());
    let mut degrees: Vec<i64> = t.rows.iter().map(|r| r[0]).collect();
    degrees.sort_unstable();
    ensure!(
        degrees == [1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 15, 15, 15, 15, 16, 30, 30, 45, 45, 45, 45],
        "degrees {degrees:?}"
    );
    let sum: i64 = degrees.iter().map(|d| d * d).sum();
    ensure!(sum == 11520 && t.order == 11520, "Σd² = {sum}, |G| = {}", t.order);
    orthogonality(&t)?;
    let printed = reference::c2();
    let sizes = printed.implied_class_sizes().map_err(|e| e.to_string())?;
    let mut induced = 0;
    for p in printed.rows.iter().filter(|p| p.label.starts_with("Ind")) {
        let want = weighted_multiset(&p.values, &sizes);
        ensure!(
            t.rows.iter().any(|r| weighted_multiset(r, &t.sizes) == want),
            "printed row {} has no computed counterpart",
            p.label
        );
        induced += 1;
    }
    ensure!(induced == 10, "{induced} printed induced rows");
    Ok(format!("21 rows, Σd² = 11520, orthogonal, 10 induced rows matched, {took}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let lift = cli_json(&["lift", "--n", "1"])?;
    let took = within(Duration::from_secs(60), start)?;
    let lifted = emitted(&lift)?;
    let c1 = emitted(&cli_json(&["chartable", "--n", "1"])?)?;
    let c2 = emitted(&cli_json(&["chartable", "--n", "2"])?)?;
    ensure!(lifted.rows.len() == 5, "{} lifted rows", lifted.rows.len());
    let mut degrees: Vec<i64> = lifted.rows.iter().map(|r| r[0]).collect();
    degrees.sort_unstable();
    ensure!(degrees == [15, 15, 30, 45, 45], "degrees {degrees:?}");
    for (r, e) in lifted.rows.iter().zip(lift["lifts"].as_array().ok_or("missing lifts")?) {
        ensure!(e["norm"] == "1", "lift of {} has norm {}", e["source"], e["norm"]);
        ensure!(c2.rows.contains(r), "lift of {} is not a row of the C2 table", e["source"]);
    }
    let mut notes = format!("5 lifts, norm 1, degrees {{15,15,30,45,45}}, all in Irr(C2), {took}");

    // The lift of the trivial character against the printed Ind(μ1⊗σ1′).
    let trivial = c1
        .rows
        .iter()
        .position(|r| r.iter().all(|&v| v == 1))
        .ok_or("C1 table has no trivial row")?;
    let label = format!("Lift({})", c1.labels[trivial]);
    let i = lifted.labels.iter().position(|l| *l == label).ok_or(format!("no row {label}"))?;
    let row = &lifted.rows[i];
    let ctx = CliffordContext::build(2).map_err(|e| e.to_string())?;
    let on_pauli: Vec<i64> = ctx.pauli_classes().iter().map(|&c| row[c]).collect();
    let printed = reference::c2();
    let want = printed.row("Ind(μ1⊗σ1′)").ok_or("printed row missing")?;
    let sizes = printed.implied_class_sizes().map_err(|e| e.to_string())?;
    let equal = weighted_multiset(row, &lifted.sizes) == weighted_multiset(&want.values, &sizes);
    let printed_at: Vec<u64> = (0..sizes.len()).filter(|&c| want.values[c] == -7).map(|c| sizes[c]).collect();
    notes.push_str(&format!(
        "; trivial lift χ(e) = {}, values {row:?}, Pauli class value(s) {on_pauli:?}; printed −7 sits on class size(s) {printed_at:?}",
        row[0]
    ));
    ensure!(
        row[0] == 15 && row.contains(&-7) && equal,
        "{notes}; the trivial lift does not equal the printed Ind(μ1⊗σ1′) row"
    );
    Ok(notes)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let ctx = CliffordContext::build(2).map_err(|e| e.to_string())?;
    let r = fischer_check(&ctx).map_err(|e| e.to_string())?;
    let took = within(Duration::from_secs(120), start)?;
    let mut rows = r.rows.clone();
    rows.sort_unstable();
    ensure!(rows == (0..21).collect::<Vec<_>>(), "rows {:?}", r.rows);
    Ok(format!("Irr(Sp(4,2)⋉Z2^4) carried row by row onto Irr(C2), section shifts {:?}, {took}", r.shifts))
}

fn criterion_5() -> Outcome {
    let c1 = enumerate_clifford(1, false).map_err(|e| e.to_string())?;
    let c2 = enumerate_clifford(2, false).map_err(|e| e.to_string())?;
    ensure!(c1.order() == 24 && clifford_order(1) == 24, "|C1| = {}", c1.order());
    ensure!(c2.order() == 11520 && clifford_order(2) == 11520, "|C2| = {}", c2.order());
    let sp2 = enumerate_sp(1).map_err(|e| e.to_string())?;
    let sp4 = enumerate_sp(2).map_err(|e| e.to_string())?;
    ensure!(sp2.order() == 6 && sp_order(1) == 6, "|Sp(2,2)| = {}", sp2.order());
    ensure!(sp4.order() == 720 && sp_order(2) == 720, "|Sp(4,2)| = {}", sp4.order());
    let in2 = enumerate_inertia(2, false).map_err(|e| e.to_string())?;
    ensure!(in2.group().order() == 768, "|IN2| = {}", in2.group().order());
    ensure!(c2.order() / in2.group().order() == 15 && c2.order() % 768 == 0, "index");
    let q = in2.symplectic_quotient().map_err(|e| e.to_string())?;
    ensure!(q.order() == 48, "|IN2/Z2^4| = {}", q.order());
    for (n, g) in [(1usize, &c1), (2, &c2)] {
        let a = PauliCharacter::sigma1(n);
        let mut orbit = std::collections::BTreeSet::new();
        for e in g.elements() {
            orbit.insert(e.act_on_character(&a).map_err(|e| e.to_string())?.label().bits());
        }
        ensure!(orbit.len() == (1 << (2 * n)) - 1, "n = {n}: orbit of size {}", orbit.len());
        ensure!(!orbit.contains(&0), "n = {n}: orbit reaches the trivial character");
    }
    let stab = c2.elements().iter().filter(|g| is_in_inertia(g)).count();
    ensure!(stab == 768, "stabiliser has {stab} elements");
    in2.verify_against_stabilizer(&c2).map_err(|e| e.to_string())?;
    Ok("|C1| = 24, |C2| = 11520, |Sp| = 6, 720, |IN2| = 768, index 15, quotient 48, orbits 3 and 15, generators = stabiliser".into())
}

/// Dense matrix and normalisation (`U U† = norm·I`) of standard generator `idx`.
fn dense_generator(n: usize, idx: usize) -> (DenseMatrix, i64) {
    let local = 2 * n;
    let cz = n * (n - 1) / 2;
    if idx < local {
        let q = idx / 2;
        return if idx.is_multiple_of(2) {
            (DenseMatrix::on_qubit(n, q, &dense::hadamard_unscaled()), 2)
        } else {
            (DenseMatrix::on_qubit(n, q, &dense::phase_s()), 1)
        };
    }
    if idx < local + cz {
        let mut k = local;
        for a in 0..n {
            for b in a + 1..n {
                if k == idx {
                    return (dense::controlled_z(n, a, b), 1);
                }
                k += 1;
            }
        }
    }
    let j = idx - local - cz;
    (matrix_oracle(&PauliElement::weyl(BitVec::unit(2 * n, j))).expect("Weyl operator"), 1)
}

fn agrees(g: &CliffordElement, u: &DenseMatrix, norm: i64, p: &PauliElement) -> Result<bool, String> {
    let want = u
        .conjugate(&matrix_oracle(p).map_err(|e| e.to_string())?, norm)
        .ok_or("dense conjugate is not a Gaussian-integer matrix")?;
    let got = matrix_oracle(&g.apply(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok(got == want)
}

fn criterion_6() -> Outcome {
    let mut generator_checks = 0;
    for n in 1..=2 {
        for (i, g) in standard_generators(n).iter().enumerate() {
            let (u, norm) = dense_generator(n, i);
            for x in BitVec::all(2 * n) {
                for k in 0..4 {
                    let p = PauliElement::new(k, x);
                    ensure!(agrees(g, &u, norm, &p)?, "generator {i} (n = {n}) on {p}");
                    generator_checks += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let pairs = 200;
    for trial in 0..pairs {
        let n = 1 + trial % 2;
        let gens = standard_generators(n);
        let mut g = CliffordElement::identity(n);
        let mut u = DenseMatrix::identity(1 << n);
        let mut norm = 1;
        for _ in 0..rng.gen_range(1..16) {
            let i = rng.gen_range(0..gens.len());
            let (m, k) = dense_generator(n, i);
            g = g.mul(&gens[i]).map_err(|e| e.to_string())?;
            u = u.mul(&m);
            norm *= k;
        }
        let p = PauliElement::new(rng.gen_range(0..4), BitVec::from_bits(2 * n, rng.gen::<u64>() & ((1 << (2 * n)) - 1)));
        ensure!(agrees(&g, &u, norm, &p)?, "random pair {trial} (n = {n}) on {p}");
    }
    Ok(format!("{generator_checks} generator/Pauli checks and {pairs} random pairs agree, phases included"))
}

fn criterion_7() -> Outcome {
    let sp2 = dixon_table(&enumerate_sp(1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(
        match_tables(&sp2, &reference::sp2()).map_err(|e| e.to_string())?.is_some(),
        "Sp(2,2) table differs from the printed one"
    );
    let c1 = dixon_table(&enumerate_clifford(1, false).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let assembled = assemble_irr(1).map_err(|e| e.to_string())?;
    ensure!(c1.len() == assembled.len(), "{} vs {} rows", c1.len(), assembled.len());
    for r in assembled.rows() {
        let moved = r.character.rebind(c1.info().clone()).map_err(|e| e.to_string())?;
        ensure!(c1.find_row(&moved).is_some(), "assembled row {} not found by Dixon", r.label);
    }
    let q = enumerate_inertia(2, false)
        .and_then(|d| d.symplectic_quotient())
        .map_err(|e| e.to_string())?;
    let qt = dixon_table(&q).map_err(|e| e.to_string())?;
    ensure!(
        match_tables(&qt, &reference::c1_times_z2()).map_err(|e| e.to_string())?.is_some(),
        "inertia quotient table differs from the printed C1×Z2 table"
    );
    Ok("Sp(2,2) = printed, C1 = assembled, IN2/Z2^4 = printed C1×Z2".into())
}

fn criterion_8() -> Outcome {
    let mut summary = Vec::new();
    for n in 1..=2 {
        let ctx = CliffordContext::build(n).map_err(|e| e.to_string())?;
        let table = cliffchar::chars::assemble_with(&ctx).map_err(|e| e.to_string())?.table;
        let r = corollary_suite(&ctx, &table).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "n = {n}:\n{r}");
        summary.push(format!("C{n}: {} rows, index {}", r.rows.len(), r.index));
    }
    Ok(summary.join("; "))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (k, f) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS — {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k}: FAIL — {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
