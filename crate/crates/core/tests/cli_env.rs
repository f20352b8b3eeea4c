//! Config resolution through the environment, kept in its own test
//! binary because it mutates the process environment.

use sdqc_eval::cli::run;

#[test]
fn env_var_supplies_the_config_and_the_flag_beats_it() {
    let dir = std::env::temp_dir();
    let pid = std::process::id();
    let env_config = dir.join(format!("sdqc-eval-env-{pid}.json"));
    let flag_config = dir.join(format!("sdqc-eval-flag-{pid}.json"));
    std::fs::write(&env_config, r#"{"times": {"cooling_us": 100}}"#).unwrap();
    std::fs::write(&flag_config, "{}").unwrap();

    std::env::set_var("SDQC_EVAL_CONFIG", &env_config);
    let mut buffer = Vec::new();
    let code = run(
        ["sdqc-eval", "timing", "--arch", "sdqc", "-d", "13"],
        &mut buffer,
    );
    assert_eq!(code, 0);
    let text = String::from_utf8(buffer).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("1516.000"), "{text}");

    let mut buffer = Vec::new();
    let code = run(
        [
            "sdqc-eval",
            "timing",
            "--arch",
            "sdqc",
            "-d",
            "13",
            "--config",
            flag_config.to_str().unwrap(),
        ],
        &mut buffer,
    );
    assert_eq!(code, 0);
    let text = String::from_utf8(buffer).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("1716.000"), "{text}");

    std::env::set_var("SDQC_EVAL_CONFIG", dir.join("sdqc-eval-does-not-exist.json"));
    let mut buffer = Vec::new();
    let code = run(["sdqc-eval", "timing"], &mut buffer);
    assert_eq!(code, 1);

    std::env::remove_var("SDQC_EVAL_CONFIG");
    std::fs::remove_file(&env_config).ok();
    std::fs::remove_file(&flag_config).ok();
}
