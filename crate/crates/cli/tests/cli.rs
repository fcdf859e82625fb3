//! End-to-end tests of the `rematch` binary: exit codes, report fields,
//! and byte-stable round trips of every emitted file format.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rematch_core::{games, ActionPair, Game, Player};
use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rematch"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn game_json(game: &Game) -> Value {
    let rows = |player: Player| -> Vec<Vec<i64>> {
        (0..game.n1())
            .map(|r| (0..game.n2()).map(|c| game.payoff(player, ActionPair::new(r, c))).collect())
            .collect()
    };
    json!({
        "actions1": game.actions1(),
        "actions2": game.actions2(),
        "payoff1": rows(Player::One),
        "payoff2": rows(Player::Two),
    })
}

fn goal_json(pairs: &[[usize; 2]]) -> Value {
    json!({ "goal": pairs })
}

fn plan_json(prefix: &[([usize; 2], u32)], goal: &[[usize; 2]]) -> Value {
    json!({
        "prefix": prefix
            .iter()
            .map(|&(pair, count)| json!({ "pair": pair, "count": count }))
            .collect::<Vec<_>>(),
        "goal": goal,
    })
}

/// The running example: two cooperation tiers and a defect action, goal
/// alternating the (C1, D) seats.
struct Tiered {
    dir: TempDir,
    game: PathBuf,
    goal: PathBuf,
}

impl Tiered {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        let game = write(dir.path(), "game.json", &game_json(&games::two_tier_cooperation()));
        let goal = write(dir.path(), "goal.json", &goal_json(&[[0, 2], [2, 0]]));
        Tiered { dir, game, goal }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg<'a>(&'a self, path: &'a Path) -> &'a str {
        path.to_str().unwrap()
    }
}

#[test]
fn analyze_summarizes_the_game() {
    let t = Tiered::new();
    let out = run(&["analyze", t.arg(&t.game), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["symmetric"], json!(true));
    assert_eq!(v["payoff_spread"], json!(17));
    assert_eq!(v["max_welfare"], json!(17));
    assert_eq!(v["pure_nash_pairs"][0]["pair"], json!([2, 2]));
    let dd = v["deviation_payoffs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["pair"] == json!([0, 0]))
        .unwrap();
    assert_eq!(dd["d"], json!([17, 17]));
}

#[test]
fn feasible_covers_all_three_verdicts() {
    let t = Tiered::new();
    let out = run(&["feasible", t.arg(&t.game), t.arg(&t.goal), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], json!("feasible"));
    assert_eq!(v["witness_pair"]["pair"], json!([2, 2]));
    assert_eq!(v["goal_value"], json!(["17/2", "17/2"]));

    let rps_game = write(t.dir.path(), "rps.json", &game_json(&games::rock_paper_scissors()));
    let rps_goal = write(t.dir.path(), "rps_goal.json", &goal_json(&[[0, 0]]));
    let out = run(&["feasible", t.arg(&rps_game), t.arg(&rps_goal), "--format", "json"]);
    assert_eq!(code(&out), 1, "infeasible is a negative verdict");
    assert_eq!(stdout_json(&out)["status"], json!("infeasible"));

    let gp_game = write(t.dir.path(), "gp.json", &game_json(&games::group_project()));
    let gp_goal = write(t.dir.path(), "gp_goal.json", &goal_json(&[[0, 1]]));
    let out = run(&["feasible", t.arg(&gp_game), t.arg(&gp_goal), "--format", "json"]);
    assert_eq!(code(&out), 0, "unknown is not a negative verdict");
    assert_eq!(stdout_json(&out)["status"], json!("unknown"));
}

#[test]
fn feasible_witness_plan_is_limit_stable() {
    let t = Tiered::new();
    let out = run(&["feasible", t.arg(&t.game), t.arg(&t.goal), "--witness", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["witness_plan"]["prefix"], json!([{ "count": 5, "pair": [2, 2] }]));

    let plan = t.path("witness_plan.json");
    fs::write(&plan, serde_json::to_string(&v["witness_plan"]).unwrap()).unwrap();
    let out = run(&["check", t.arg(&t.game), t.arg(&plan), "--limit"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("STABLE"));
}

#[test]
fn derive_emits_byte_stable_canonical_instances() {
    let t = Tiered::new();
    let inst = t.path("inst.json");
    let out = run(&[
        "derive", t.arg(&t.game), t.arg(&t.goal),
        "--out", t.arg(&inst),
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);

    let file_bytes = fs::read(&inst).unwrap();
    assert_eq!(out.stdout, file_bytes, "stdout and --out emit identical bytes");

    // Re-parse and re-emit through the private formats by way of the
    // canonical printer: parsing and pretty-printing the Value must be a
    // fixed point of the canonical form.
    let reparsed: Value = serde_json::from_slice(&file_bytes).unwrap();
    let mut reprinted = serde_json::to_string_pretty(&reparsed).unwrap();
    reprinted.push('\n');
    assert_eq!(reprinted.as_bytes(), &file_bytes[..]);

    assert_eq!(reparsed["scale"], json!(2));
    assert_eq!(reparsed["theta"], json!([0, 17]));
    assert_eq!(reparsed["bound"], json!(47));
    assert_eq!(reparsed["max_sw"], json!(true));
}

#[test]
fn solve_assembles_a_plan_that_checks_out() {
    let t = Tiered::new();
    let inst = t.path("inst.json");
    run(&["derive", t.arg(&t.game), t.arg(&t.goal), "--out", t.arg(&inst)]);

    let plan = t.path("plan.json");
    let out = run(&[
        "solve", t.arg(&inst),
        "--game", t.arg(&t.game),
        "--goal", t.arg(&t.goal),
        "--out", t.arg(&plan),
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], json!("optimal"));
    assert_eq!(v["total_sum"], json!("21"));
    assert_eq!(v["totals"], json!(["5", "16"]));
    assert_eq!(v["verified_limit_stable"], json!(true));

    for (beta, flag) in [("--limit", None), ("--beta", Some("99/100"))] {
        let mut args = vec!["check", t.arg(&t.game), t.arg(&plan), beta];
        if let Some(b) = flag {
            args.push(b);
        }
        let out = run(&args);
        assert_eq!(code(&out), 0, "assembled plan passes {beta}");
    }
}

#[test]
fn solve_without_a_solution_exits_one() {
    let t = Tiered::new();
    let inst = t.path("small.json");
    run(&["derive", t.arg(&t.game), t.arg(&t.goal), "--bound", "5", "--out", t.arg(&inst)]);
    let out = run(&["solve", t.arg(&inst), "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["status"], json!("no_solution_within_bound"));
}

#[test]
fn bare_goal_plan_is_rejected_with_a_labeled_witness() {
    let t = Tiered::new();
    let plan = write(t.dir.path(), "bare.json", &plan_json(&[], &[[0, 0]]));
    let out = run(&["check", t.arg(&t.game), t.arg(&plan), "--beta", "99/100", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["status"], json!("unstable"));
    assert_eq!(v["witness"]["step"], json!(0));
    assert_eq!(v["witness"]["deviation_label"], json!("D"));
}

#[test]
fn boundary_plans_exit_zero() {
    let t = Tiered::new();
    let game = write(t.dir.path(), "gp.json", &game_json(&games::group_project()));
    let plan = write(t.dir.path(), "gp_plan.json", &plan_json(&[], &[[0, 1]]));
    let out = run(&["check", t.arg(&game), t.arg(&plan), "--limit", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], json!("boundary"));
    assert_eq!(v["witness"]["margin"], json!("0"));
}

#[test]
fn discount_factors_must_be_exact_fractions_in_range() {
    let t = Tiered::new();
    let plan = write(t.dir.path(), "bare.json", &plan_json(&[], &[[0, 0]]));
    for bad in ["0.99", "99e-2", "3/2", "1/1", "0/5", "-1/2", "1/0"] {
        let out = run(&["check", t.arg(&t.game), t.arg(&plan), "--beta", bad]);
        assert_eq!(code(&out), 2, "beta {bad:?} must be rejected");
    }
}

#[test]
fn limit_mode_rejects_the_reassignment_variant() {
    let t = Tiered::new();
    let plan = write(t.dir.path(), "bare.json", &plan_json(&[], &[[0, 0]]));
    let out = run(&["check", t.arg(&t.game), t.arg(&plan), "--limit", "--variant", "reassign"]);
    assert_eq!(code(&out), 2);
    // The finite checker takes the variant just fine.
    let out = run(&[
        "check", t.arg(&t.game), t.arg(&plan),
        "--beta", "1/2",
        "--variant", "reassign",
    ]);
    assert!(code(&out) <= 1);
}

#[test]
fn oracle_cross_check_agrees_with_the_solver() {
    let t = Tiered::new();
    let inst = t.path("inst.json");
    run(&["derive", t.arg(&t.game), t.arg(&t.goal), "--out", t.arg(&inst)]);
    let out = run(&[
        "oracle", t.arg(&inst),
        "--max-len", "4",
        "--cross-check",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["status"], json!("optimal"));
    assert_eq!(v["total_sum"], json!("21"));
    assert_eq!(v["cross_check"]["matched"], json!(true));
}

#[test]
fn reduce_solve_round_trip_decides_subset_sums() {
    let t = Tiered::new();
    let solvable = write(t.dir.path(), "q1.json", &json!({ "values": [3, 5], "target": 11 }));
    let prefix = t.path("red");
    let out = run(&["reduce", t.arg(&solvable), "--out", t.arg(&prefix)]);
    assert_eq!(code(&out), 0);

    let inst = t.path("red.instance.json");
    let game = t.path("red.game.json");
    let goal = t.path("red.goal.json");
    for p in [&inst, &game, &goal] {
        assert!(p.exists(), "{} missing", p.display());
    }
    let out = run(&[
        "solve", t.arg(&inst),
        "--game", t.arg(&game),
        "--goal", t.arg(&goal),
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["total_sum"], json!("22"), "budget 2B is hit exactly when solvable");
    assert_eq!(v["verified_limit_stable"], json!(true));

    // 3 is not a non-negative combination of {2}: the reduced instance has
    // no solution inside the budget, and the oracle confirms within depth.
    let unsolvable = write(t.dir.path(), "q2.json", &json!({ "values": [2], "target": 3 }));
    let prefix2 = t.path("red2");
    run(&["reduce", t.arg(&unsolvable), "--out", t.arg(&prefix2)]);
    let inst2 = t.path("red2.instance.json");
    let out = run(&["solve", t.arg(&inst2)]);
    assert_eq!(code(&out), 1);
    let out = run(&["oracle", t.arg(&inst2), "--max-len", "3", "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["status"], json!("none_within_depth"));
}

#[test]
fn malformed_inputs_exit_two() {
    let t = Tiered::new();
    let bad_game = t.path("bad.json");
    fs::write(&bad_game, "{ \"actions1\": [\"a\"] ").unwrap();
    let out = run(&["analyze", t.arg(&bad_game)]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());

    let out_of_range = write(t.dir.path(), "big_goal.json", &goal_json(&[[9, 9]]));
    let out = run(&["feasible", t.arg(&t.game), t.arg(&out_of_range)]);
    assert_eq!(code(&out), 2);

    let missing = t.path("nope.json");
    let out = run(&["derive", t.arg(&t.game), t.arg(&missing)]);
    assert_eq!(code(&out), 2);
}
