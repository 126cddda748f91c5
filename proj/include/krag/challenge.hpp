#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace krag {

struct ServerEndpoint {
    std::string host;
    int port{0};
};

// Per-challenge manifest: metadata, files to stage, optional live server.
struct ChallengeSpec {
    std::string name;
    std::string category;  // crypto | forensics | pwn | rev | web | misc
    int points{0};
    std::string flag;
    std::string flag_format;
    std::string description;
    std::vector<std::string> files;  // relative to the manifest's directory
    std::optional<ServerEndpoint> server;
    std::string container_home{"/home/ctfplayer"};

    // Directory the manifest was loaded from; file paths resolve against it.
    std::string base_dir;

    static ChallengeSpec from_file(const std::filesystem::path& path);
    void validate() const;
};

bool valid_category(const std::string& category);

}  // namespace krag
