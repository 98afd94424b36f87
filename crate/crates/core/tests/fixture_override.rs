//! Kept in its own binary: it changes a process-wide environment variable.

use kuniform::fixtures;

#[test]
fn override_directory_is_honoured() {
    let dir = std::env::temp_dir().join(format!("kuniform-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join(fixtures::FACTS), "nonexistent 4 5 2 2 test\n").unwrap();
    std::env::set_var(fixtures::ENV_VAR, &dir);
    let facts = fixtures::facts();
    let missing = fixtures::read(fixtures::EVEN_WEIGHT);
    std::env::remove_var(fixtures::ENV_VAR);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(facts.unwrap().facts().len(), 1);
    assert!(matches!(missing, Err(kuniform::Error::Io { .. })));
}
