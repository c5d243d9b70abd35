use std::process::Command;

use mixmult::commands::Options;
use mixmult::model::parse_model;
use mixmult::report::Format;
use mixmult::{run, Invocation};
use mixmult_core::kernel::{Monomial, MonomialIdeal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn invocation(command: &str, input: &str) -> Invocation {
    Invocation {
        command: command.into(),
        input: input.into(),
        t: None,
        format: Format::Json,
        options: Options::default(),
    }
}

fn random_source(rng: &mut ChaCha8Rng) -> String {
    let sizes: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=3)).collect();
    let blocks: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(b, &k)| (1..=k).map(|i| format!("{}{i}", ["a", "b", "c"][b])).collect())
        .collect();
    let names: Vec<String> = blocks.concat();
    let mut text = format!(
        "ring blocks = [{}]\n",
        blocks.iter().map(|b| format!("[{}]", b.join(", "))).collect::<Vec<_>>().join(", ")
    );
    let monomial = |rng: &mut ChaCha8Rng| {
        let factors: Vec<String> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let v = &names[rng.gen_range(0..names.len())];
                match rng.gen_range(1..=3) {
                    1 => v.clone(),
                    e => format!("{v}^{e}"),
                }
            })
            .collect();
        factors.join("*")
    };
    let term = |rng: &mut ChaCha8Rng| {
        let gens: Vec<String> = (0..rng.gen_range(1..=3)).map(|_| monomial(rng)).collect();
        format!("({})", gens.join(", "))
    };
    for i in 0..rng.gen_range(1..=3) {
        let expr = match rng.gen_range(0..5) {
            0 => term(rng),
            1 => format!("intersect({}, {})", term(rng), term(rng)),
            2 => format!("sum({}, {})", term(rng), term(rng)),
            3 => format!("product({}, {})", term(rng), term(rng)),
            _ => format!("power({}, {})", term(rng), rng.gen_range(1..=2)),
        };
        text.push_str(&format!("ideal I{i} = {expr}\n"));
    }
    text
}

fn brute_intersection(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let gens = a
        .generators()
        .iter()
        .flat_map(|g| b.generators().iter().map(move |h| g.lcm(h)))
        .collect::<Vec<Monomial>>();
    MonomialIdeal::new(a.num_vars(), gens)
}

#[test]
fn rendered_models_parse_back_to_the_same_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let text = random_source(&mut rng);
        let model = parse_model(&text).unwrap();
        let again = parse_model(&model.to_source()).unwrap();
        assert_eq!(model.ring.blocks(), again.ring.blocks());
        assert_eq!(model.ideals, again.ideals, "{text}");
    }
}

#[test]
fn fixture_file_matches_pairwise_lcm_intersection() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../models/example37.mm")).unwrap();
    let model = parse_model(&text).unwrap();
    let spec = &model.ring;
    let term = |names: &[&str]| MonomialIdeal::new(spec.num_vars(), names.iter().map(|n| spec.variable(spec.var(n).unwrap())));
    let expected = [term(&["x1", "y1", "z1"]), term(&["x1", "x2"]), term(&["y1", "y2"]), term(&["z1", "z2"])]
        .into_iter()
        .reduce(|a, b| brute_intersection(&a, &b))
        .unwrap();
    assert_eq!(model.ideal("I"), Some(&expected));
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    for (command, input) in [("mixed-table", "builtin:example37"), ("positivity", "builtin:example37"), ("maximal-lengths", "builtin:example37")] {
        let first = run(&invocation(command, input));
        let second = run(&invocation(command, input));
        assert_eq!(first, second);
        assert_eq!(first.1, 0);
    }
}

#[test]
fn library_reports_have_the_documented_keys() {
    let (out, code) = run(&invocation("mixed-table", "builtin:example37"));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "config", "result", "guards"]);
    assert_eq!(v["result"]["table"]["2,2,0"], 1);
    assert_eq!(v["result"]["table"].as_object().unwrap().len(), 15);
}

#[test]
fn certificates_are_ordered_step_lists() {
    let mut inv = invocation("filter-seq", "builtin:example37");
    inv.options.seq = Some(["x3", "x2", "y3", "y2"].map(String::from).to_vec());
    let (out, code) = run(&inv);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let steps = v["result"]["certificate"]["steps"].as_array().unwrap();
    let order: Vec<&str> = steps.iter().map(|s| s["variable"].as_str().unwrap()).collect();
    assert_eq!(order, ["x3", "x2", "y3", "y2"]);
    for s in steps {
        for key in ["variable", "block", "colon", "saturation"] {
            assert!(s.get(key).is_some());
        }
    }
}

#[test]
fn hilbert_at_origin_is_one() {
    let mut inv = invocation("hilbert-at", "builtin:example37");
    inv.options.at = Some(vec![0, 0, 0]);
    let (out, _) = run(&inv);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["length"], 1);
}

fn binary(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixmult")).args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("mixmult-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.mm");
    std::fs::write(&bad, "ring blocks = [[x],[y]]\nideal I = (x*q)\n").unwrap();
    let (out, code) = binary(&["mixed-table", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().starts_with("2:14"));

    let (out, code) = binary(&["mixed-table", "builtin:example37", "--max-base", "1", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "guard");

    let (_, code) = binary(&["positivity", "builtin:example37", "--type", "1,1"]);
    assert_eq!(code, 2);
    let (_, code) = binary(&["filter-seq", "builtin:example37", "--type", "3,3,0"]);
    assert_eq!(code, 2);
    let (_, code) = binary(&["nonsense", "builtin:example37"]);
    assert_eq!(code, 2);
    let (out, code) = binary(&["hilbert-at", "builtin:example36", "--t", "4", "--at", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("length: 10"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn theorem45_on_a_file_model() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../models/systems.mm");
    for (system, ty, seq) in [("equal", "0,1", "x"), ("equal", "1,0", ""), ("principal", "1,0", "")] {
        let mut args = vec!["theorem45", path, "--system", system, "--type", ty, "--format", "json"];
        if !seq.is_empty() {
            args.extend(["--seq", seq]);
        }
        let (out, code) = binary(&args);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["status"], "EQUAL");
    }
}
