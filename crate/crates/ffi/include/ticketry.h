#ifndef TICKETRY_H
#define TICKETRY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every fallible call. The nonzero values match the command-line exit codes
// where they overlap.
typedef enum TkStatus {
  TK_STATUS_OK = 0,
  // A required pointer was null or a string was not UTF-8.
  TK_STATUS_INVALID_ARGUMENT = 1,
  TK_STATUS_PARSE = 2,
  TK_STATUS_INVALID_QUERY = 3,
  TK_STATUS_RESOURCE_LIMIT = 4,
  // A panic was caught at the boundary.
  TK_STATUS_INTERNAL = 5,
} TkStatus;

// A parsed instance: network, zones, fare system and optional query.
typedef struct TkInstance TkInstance;

// A cheapest path with its price and node ids.
typedef struct TkRoute TkRoute;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success. The pointer
// stays valid until the next call.
const char *tk_last_error(void);

// Parses an instance from TOML text.
//
// # Safety
// `toml` must be a valid NUL-terminated string and `out` a valid pointer.
enum TkStatus tk_instance_parse(const char *toml, struct TkInstance **out);

// Reads and parses an instance file.
//
// # Safety
// `path` must be a valid NUL-terminated string and `out` a valid pointer.
enum TkStatus tk_instance_open(const char *path, struct TkInstance **out);

// # Safety
// `inst` must come from `tk_instance_parse` / `tk_instance_open` (or be null) and not
// be used afterwards.
void tk_instance_free(struct TkInstance *inst);

// Prices the walk given by `len` node ids. Virtual nodes on crossed edges may be left
// out. An unavailable tariff yields `INFINITY`.
//
// # Safety
// `inst` must be a live handle, `ids` must point to `len` valid strings and `price` to
// writable memory.
enum TkStatus tk_price_walk(const struct TkInstance *inst,
                            const char *const *ids,
                            size_t len,
                            double *price);

// Cheapest path from `from` to `to` under the instance's fare system.
//
// # Safety
// `inst` must be a live handle, `from` / `to` valid strings and `out` a valid pointer.
enum TkStatus tk_route(const struct TkInstance *inst,
                       const char *from,
                       const char *to,
                       bool compact,
                       struct TkRoute **out);

// Price of the route; `INFINITY` if no tariff applies.
//
// # Safety
// `route` must be a live handle.
double tk_route_price(const struct TkRoute *route);

// Number of nodes on the route.
//
// # Safety
// `route` must be a live handle.
size_t tk_route_len(const struct TkRoute *route);

// Id of the `i`-th route node, or null when out of range. Owned by the route.
//
// # Safety
// `route` must be a live handle.
const char *tk_route_node(const struct TkRoute *route, size_t i);

// Number of zones the route visits under the tariff's count, or -1 if the tariff does
// not count zones.
//
// # Safety
// `route` must be a live handle.
int64_t tk_route_zone_count(const struct TkRoute *route);

// # Safety
// `route` must come from `tk_route` (or be null) and not be used afterwards.
void tk_route_free(struct TkRoute *route);

// Runs the property checks and condition evaluators, writing a JSON report to `out`
// (release it with `tk_string_free`). Budgets of 0 take the defaults.
//
// # Safety
// `inst` must be a live handle and `out` a valid pointer.
enum TkStatus tk_audit_json(const struct TkInstance *inst,
                            size_t budget_edges,
                            size_t budget_segments,
                            char **out);

// # Safety
// `s` must come from this library (or be null) and not be used afterwards.
void tk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TICKETRY_H */
