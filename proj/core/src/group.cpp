#include "implode/group.hpp"

#include <numeric>

#include "implode/errors.hpp"

namespace implode {

int group_dim(GroupKind kind, int n) {
    switch (kind) {
        case GroupKind::A:
            return n * n - 1;
        case GroupKind::B:
        case GroupKind::D:
            return n * (n - 1) / 2;
        case GroupKind::C:
            return n * (n + 1) / 2;
    }
    return 0;
}

int torus_rank(GroupKind kind, int n) {
    return kind == GroupKind::A ? n - 1 : n / 2;
}

int unipotent_dim(GroupKind kind, int n) {
    return (group_dim(kind, n) - torus_rank(kind, n)) / 2;
}

std::vector<int> full_flag_dims(GroupKind kind, int n) {
    std::vector<int> dims;
    const int top = kind == GroupKind::A ? n - 1 : n / 2;
    dims.resize(top);
    std::iota(dims.begin(), dims.end(), 1);
    dims.push_back(n);
    return dims;
}

GroupKind kind_from_name(const std::string& name, int n) {
    if (n < 1) throw ValidationError("group size must be positive, got " + std::to_string(n));
    if (name == "su") return GroupKind::A;
    if (name == "so") return n % 2 == 1 ? GroupKind::B : GroupKind::D;
    if (name == "sp") {
        if (n % 2 != 0) throw OddSymplectic("sp requires even n, got " + std::to_string(n));
        return GroupKind::C;
    }
    throw ValidationError("unknown group '" + name + "' (expected su, so or sp)");
}

std::string kind_name(GroupKind kind) {
    switch (kind) {
        case GroupKind::A:
            return "su";
        case GroupKind::B:
        case GroupKind::D:
            return "so";
        case GroupKind::C:
            return "sp";
    }
    return "?";
}

bool is_orthosymplectic(GroupKind kind) {
    return kind != GroupKind::A;
}

}  // namespace implode
