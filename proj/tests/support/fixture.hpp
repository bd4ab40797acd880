#ifndef TLSQL_TESTS_FIXTURE_HPP
#define TLSQL_TESTS_FIXTURE_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "tlsql/database.hpp"

namespace tlsql::testing {

inline std::filesystem::path source_dir() { return TLSQL_SOURCE_DIR; }
inline std::filesystem::path tests_dir() { return source_dir() / "tests"; }
inline std::filesystem::path corpus_dir() { return tests_dir() / "corpus"; }

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "tlsql")
    {
        std::random_device rd;
        for (;;) {
            path_ = std::filesystem::temp_directory_path() / (prefix + "_" + std::to_string(rd()));
            if (std::filesystem::create_directory(path_)) break;
        }
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// SQLite file seeded from tests/fixtures/tml1m_fixture.sql.
class FixtureDb {
public:
    FixtureDb() : dir_("tlsql_db"), file_(dir_.path() / "tml1m.db")
    {
        auto conn = db::SqliteConnection::open_readwrite(file_.string());
        conn->execute_script(read_file(tests_dir() / "fixtures" / "tml1m_fixture.sql"));
    }

    const std::filesystem::path& file() const { return file_; }
    std::string url() const { return "sqlite://" + file_.string(); }
    std::unique_ptr<db::SqliteConnection> open() const { return db::SqliteConnection::open_readonly(file_.string()); }

private:
    TempDir dir_;
    std::filesystem::path file_;
};

} // namespace tlsql::testing

#endif
