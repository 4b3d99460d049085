#pragma once

#include <stdexcept>

namespace nbox
{

// Malformed external input: formula text, model/proof JSON, AST JSON.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A world name that the model does not define.
class unknown_world : public input_error
{
public:
    using input_error::input_error;
};

// An operation was called outside its documented precondition.
class precondition_error : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

// A search or enumeration would exceed its configured cap.
class resource_limit_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace nbox
