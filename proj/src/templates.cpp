#include "orchestra/templates.hpp"

namespace orchestra {

namespace {

// Field and generator shorthands.
json field(const std::string& name, const std::string& type, json gen, json extra = json::object())
{
    json f = {{"name", name}, {"type", type}, {"gen", std::move(gen)}};
    for (auto& [k, v] : extra.items())
        f[k] = v;
    return f;
}

json enum_field(const std::string& name, std::vector<std::string> values)
{
    return field(name, "enum", json::object(), {{"enum", values}});
}

json ref_field(const std::string& name, const std::string& table)
{
    return field(name, "ref", {{"ref", true}}, {{"ref", table}});
}

json pool(json values)
{
    return {{"pool", std::move(values)}};
}

json int_range(std::int64_t lo, std::int64_t hi)
{
    return {{"int", {lo, hi}}};
}

json real_range(double lo, double hi)
{
    return {{"real", {lo, hi}}};
}

json date_range(const std::string& base, int span)
{
    return {{"date", {base, span}}};
}

const json first_names = {"Ana", "Ben", "Chloe", "Dev", "Elif", "Farah", "Goran", "Hana", "Ivan", "Jun",
                          "Kofi", "Lena", "Marco", "Nia", "Omar", "Priya", "Quinn", "Rosa", "Sami", "Tara"};
const json last_names = {"Silva", "Okafor", "Novak", "Tanaka", "Moreau", "Haddad",
                         "Berg", "Costa", "Kim", "Patel", "Rossi", "Walsh"};
const json cities = {"Lisbon", "Nairobi", "Osaka", "Denver", "Lima", "Oslo", "Cairo", "Perth", "Quebec", "Seoul"};

json person_name()
{
    return {{"pattern", "{first} {last}"}, {"pools", {{"first", first_names}, {"last", last_names}}}};
}

json email_pattern(const std::string& domain)
{
    return {{"pattern", "{first}{#}@" + domain}, {"pools", {{"first", {"ana", "ben", "chloe", "dev", "elif", "jun"}}}}};
}

json new_email()
{
    return {{"pattern", "{first}.{n}@newmail.example"},
            {"pools", {{"first", {"ana", "ben", "kofi", "lena", "omar", "tara"}}, {"n", {11, 27, 38, 45, 52, 69, 73, 94}}}}};
}

json table(const std::string& name, const std::string& key, const std::string& prefix, int size, json fields)
{
    return {{"name", name}, {"key", key}, {"prefix", prefix}, {"size", size}, {"fields", std::move(fields)}};
}

// Tool shorthands.
json param(const std::string& name, const std::string& type, const std::string& description,
           std::vector<std::string> enum_values = {})
{
    json p = {{"name", name}, {"type", type}, {"description", description}, {"required", true}};
    if (!enum_values.empty())
        p["enum"] = enum_values;
    return p;
}

json tool(const std::string& name, const std::string& description, json params, json executor)
{
    executor["type"] = "db";
    return {{"name", name},
            {"description", description},
            {"parameters", std::move(params)},
            {"kind", "domain_function"},
            {"pricing_ref", "domain_function"},
            {"latency_ref", "domain_function"},
            {"executor", std::move(executor)}};
}

json read_op(const std::string& table, const std::string& key_param, std::vector<std::string> fields = {})
{
    json e = {{"op", "read"}, {"table", table}, {"key_param", key_param}};
    if (!fields.empty())
        e["fields"] = fields;
    return e;
}

json list_op(const std::string& table, const std::string& match_field, const std::string& value_param)
{
    return {{"op", "list"}, {"table", table}, {"match_field", match_field}, {"value_param", value_param}};
}

json update_op(const std::string& table, const std::string& key_param, json set, json require = json::array())
{
    return {{"op", "update"}, {"table", table}, {"key_param", key_param}, {"set", std::move(set)},
            {"require", std::move(require)}};
}

json create_op(const std::string& table, const std::string& prefix, json set, json require = json::array(),
               json effects = json::array())
{
    return {{"op", "create"},         {"table", table},          {"id_prefix", prefix}, {"set", std::move(set)},
            {"require", std::move(require)}, {"effects", std::move(effects)}};
}

json remove_op(const std::string& table, const std::string& key_param, json require = json::array())
{
    return {{"op", "remove"}, {"table", table}, {"key_param", key_param}, {"require", std::move(require)}};
}

json set_param(const std::string& field, const std::string& param)
{
    return {{"field", field}, {"mode", "set"}, {"param", param}};
}

json set_value(const std::string& field, json value)
{
    return {{"field", field}, {"mode", "set"}, {"value", std::move(value)}};
}

json add_param(const std::string& field, const std::string& param, double scale, std::optional<double> min = {})
{
    json a = {{"field", field}, {"mode", "add"}, {"param", param}, {"scale", scale}};
    if (min)
        a["min"] = *min;
    return a;
}

json add_value(const std::string& field, double value, std::optional<double> min = {})
{
    json a = {{"field", field}, {"mode", "add"}, {"value", value}};
    if (min)
        a["min"] = *min;
    return a;
}

json on_ref(json assignment_or_requirement, const std::string& ref_field)
{
    assignment_or_requirement["ref_field"] = ref_field;
    return assignment_or_requirement;
}

json req(const std::string& field, json allowed)
{
    return {{"field", field}, {"in", std::move(allowed)}};
}

json call(const std::string& tool, json args)
{
    return {{"tool", tool}, {"args", std::move(args)}};
}

json bind_record(const std::string& var, const std::string& table, json where = json::object(),
                 json gte = json::object())
{
    json b = {{"var", var}, {"table", table}};
    if (!where.empty())
        b["where"] = std::move(where);
    if (!gte.empty())
        b["where_gte"] = std::move(gte);
    return b;
}

json bind_value(const std::string& var, json gen)
{
    return {{"var", var}, {"value", std::move(gen)}};
}

json intent(const std::string& id, json bind, json calls, const std::string& instruction,
            const std::string& required_info, json complications = json::array())
{
    json i = {{"id", id},
              {"bind", std::move(bind)},
              {"calls", std::move(calls)},
              {"instruction", instruction},
              {"required_info", required_info}};
    if (!complications.empty())
        i["complications"] = std::move(complications);
    return i;
}

json complication(json bind, json calls, const std::string& instruction, std::optional<std::string> required = {})
{
    json c = {{"bind", std::move(bind)}, {"calls", std::move(calls)}, {"instruction", instruction}};
    if (required)
        c["required_info"] = *required;
    return c;
}

DomainTemplate with_pricing(DomainTemplate t)
{
    t.pricing = domain_pricing();
    t.latency = domain_latency();
    return t;
}

DomainTemplate travel()
{
    DomainTemplate t;
    t.name = "travel";
    const std::vector<std::string> cabins{"economy", "premium", "business"};
    t.tables = {
        table("customers", "customer_id", "CU", 200,
              {field("name", "string", person_name()), field("email", "string", email_pattern("travel.example")),
               enum_field("tier", {"basic", "silver", "gold"}), field("miles", "integer", int_range(0, 50000))}),
        table("flights", "flight_id", "FL", 150,
              {field("origin", "string", pool(cities)), field("destination", "string", pool(cities)),
               field("date", "date", date_range("2026-11-01", 90)),
               enum_field("status", {"scheduled", "scheduled", "delayed", "cancelled", "departed"}),
               field("seats_available", "integer", int_range(0, 12)), field("fare", "number", real_range(80, 900))}),
        table("bookings", "booking_id", "BK", 250,
              {ref_field("customer_id", "customers"), ref_field("flight_id", "flights"),
               field("cabin", "enum", pool(cabins), {{"enum", cabins}}),
               field("status", "enum", pool({"confirmed", "confirmed", "cancelled", "checked_in"}),
                     {{"enum", {"confirmed", "cancelled", "checked_in"}}}),
               enum_field("seat_pref", {"aisle", "window", "middle"}), field("bags", "integer", int_range(0, 2))}),
        table("hotels", "hotel_id", "HT", 52,
              {field("name", "string",
                     {{"pattern", "{a} {b} Hotel"},
                      {"pools", {{"a", {"Grand", "Harbor", "Garden", "Summit", "Old Town"}}, {"b", cities}}}}),
               field("city", "string", pool(cities)), field("nightly_rate", "number", real_range(60, 480)),
               field("rooms_available", "integer", int_range(0, 25))}),
        table("hotel_reservations", "reservation_id", "HR", 100,
              {ref_field("customer_id", "customers"), ref_field("hotel_id", "hotels"),
               field("nights", "integer", int_range(1, 7)),
               field("status", "enum", pool({"active", "active", "cancelled"}), {{"enum", {"active", "cancelled"}}})}),
    };
    t.tools = {
        tool("get_customer", "Look up a customer profile by id.", {param("customer_id", "string", "customer id")},
             read_op("customers", "customer_id")),
        tool("update_customer_email", "Change the email address on a customer profile.",
             {param("customer_id", "string", "customer id"), param("email", "string", "new email address")},
             update_op("customers", "customer_id", {set_param("email", "email")})),
        tool("get_flight_status", "Current status and date of a flight.", {param("flight_id", "string", "flight id")},
             read_op("flights", "flight_id", {"flight_id", "status", "date"})),
        tool("get_flight_details", "Full record of a flight including fare and free seats.",
             {param("flight_id", "string", "flight id")}, read_op("flights", "flight_id")),
        tool("get_booking", "Look up a booking by id.", {param("booking_id", "string", "booking id")},
             read_op("bookings", "booking_id")),
        tool("list_customer_bookings", "List booking ids held by a customer.",
             {param("customer_id", "string", "customer id")}, list_op("bookings", "customer_id", "customer_id")),
        tool("book_flight", "Book a seat on a flight for a customer.",
             {param("flight_id", "string", "flight id"), param("customer_id", "string", "customer id"),
              param("cabin", "enum", "cabin class", cabins),
              param("seat_pref", "enum", "seat preference", {"aisle", "window", "middle"})},
             create_op("bookings", "BK",
                       {set_param("flight_id", "flight_id"), set_param("customer_id", "customer_id"),
                        set_param("cabin", "cabin"), set_value("status", "confirmed"),
                        set_param("seat_pref", "seat_pref"), set_value("bags", 0)},
                       {on_ref(req("status", {"scheduled", "delayed"}), "flight_id")},
                       {on_ref(add_value("seats_available", -1, 0.0), "flight_id")})),
        tool("cancel_booking", "Cancel a confirmed booking.", {param("booking_id", "string", "booking id")},
             update_op("bookings", "booking_id", {set_value("status", "cancelled")}, {req("status", {"confirmed"})})),
        tool("change_cabin", "Move a confirmed booking to another cabin class.",
             {param("booking_id", "string", "booking id"), param("cabin", "enum", "cabin class", cabins)},
             update_op("bookings", "booking_id", {set_param("cabin", "cabin")}, {req("status", {"confirmed"})})),
        tool("add_baggage", "Add checked bags to a booking.",
             {param("booking_id", "string", "booking id"), param("count", "number", "bags to add")},
             update_op("bookings", "booking_id", {add_param("bags", "count", 1.0)},
                       {req("status", {"confirmed", "checked_in"})})),
        tool("check_in", "Check in a confirmed booking.", {param("booking_id", "string", "booking id")},
             update_op("bookings", "booking_id", {set_value("status", "checked_in")}, {req("status", {"confirmed"})})),
        tool("get_hotel", "Look up a hotel by id.", {param("hotel_id", "string", "hotel id")},
             read_op("hotels", "hotel_id")),
        tool("list_hotels_in_city", "List hotel ids in a city.", {param("city", "string", "city name")},
             list_op("hotels", "city", "city")),
        tool("reserve_hotel", "Reserve hotel nights for a customer.",
             {param("hotel_id", "string", "hotel id"), param("customer_id", "string", "customer id"),
              param("nights", "number", "number of nights")},
             create_op("hotel_reservations", "HR",
                       {set_param("hotel_id", "hotel_id"), set_param("customer_id", "customer_id"),
                        set_param("nights", "nights"), set_value("status", "active")},
                       {}, {on_ref(add_value("rooms_available", -1, 0.0), "hotel_id")})),
        tool("cancel_hotel_reservation", "Cancel an active hotel reservation.",
             {param("reservation_id", "string", "reservation id")},
             update_op("hotel_reservations", "reservation_id", {set_value("status", "cancelled")},
                       {req("status", {"active"})})),
    };
    json open_flight = bind_record("f", "flights", {{"status", {"scheduled", "delayed"}}}, {{"seats_available", 1}});
    t.intents = {
        intent("cancel_booking", {bind_record("b", "bookings", {{"status", {"confirmed"}}})},
               {call("cancel_booking", {{"booking_id", "{b.booking_id}"}})},
               "Please cancel my booking {b.booking_id} on flight {b.flight_id} and confirm its status.",
               "{b'.status}",
               {complication({open_flight},
                             {call("book_flight", {{"flight_id", "{f.flight_id}"},
                                                   {"customer_id", "{b.customer_id}"},
                                                   {"cabin", "{b.cabin}"},
                                                   {"seat_pref", "window"}})},
                             "Then rebook me on flight {f.flight_id} in the same cabin with a window seat and give "
                             "me the new booking number.",
                             "{new.booking_id}")}),
        intent("flight_status", {bind_record("f", "flights")},
               {call("get_flight_status", {{"flight_id", "{f.flight_id}"}})},
               "What is the current status of flight {f.flight_id} from {f.origin} to {f.destination}?",
               "{f.status}",
               {complication({bind_record("c", "bookings", {{"status", {"confirmed"}}})},
                             {call("check_in", {{"booking_id", "{c.booking_id}"}})},
                             "Also check me in for booking {c.booking_id}.")}),
        intent("book_flight",
               {bind_record("c", "customers"),
                bind_record("f", "flights", {{"status", {"scheduled"}}}, {{"seats_available", 1}}),
                bind_value("cabin", pool(cabins))},
               {call("book_flight", {{"flight_id", "{f.flight_id}"},
                                     {"customer_id", "{c.customer_id}"},
                                     {"cabin", "{cabin}"},
                                     {"seat_pref", "aisle"}})},
               "Book {c.name} ({c.customer_id}) on flight {f.flight_id} to {f.destination} in {cabin}, aisle seat, "
               "and tell me the booking number.",
               "{new.booking_id}",
               {complication({bind_record("h", "hotels", json::object(), {{"rooms_available", 1}}),
                              bind_value("n", int_range(1, 5))},
                             {call("reserve_hotel", {{"hotel_id", "{h.hotel_id}"},
                                                     {"customer_id", "{c.customer_id}"},
                                                     {"nights", "{n}"}})},
                             "Also reserve {n} nights at {h.name} ({h.hotel_id}) and give me that reservation "
                             "number.",
                             "{new.reservation_id}")}),
        intent("change_cabin",
               {bind_record("b", "bookings", {{"status", {"confirmed"}}}), bind_value("cabin", pool(cabins))},
               {call("change_cabin", {{"booking_id", "{b.booking_id}"}, {"cabin", "{cabin}"}})},
               "Please move booking {b.booking_id} to {cabin} and confirm the cabin on file.", "{b'.cabin}"),
        intent("add_bags",
               {bind_record("b", "bookings", {{"status", {"confirmed", "checked_in"}}}),
                bind_value("n", int_range(1, 2))},
               {call("add_baggage", {{"booking_id", "{b.booking_id}"}, {"count", "{n}"}})},
               "Add {n} checked bag(s) to booking {b.booking_id} and tell me how many bags it has now.",
               "{b'.bags}"),
        intent("list_bookings", {bind_record("b", "bookings")},
               {call("list_customer_bookings", {{"customer_id", "{b.customer_id}"}})},
               "Which bookings are on file for customer {b.customer_id}?", "{b.booking_id}"),
        intent("reserve_hotel",
               {bind_record("c", "customers"), bind_record("h", "hotels", json::object(), {{"rooms_available", 1}}),
                bind_value("n", int_range(1, 5))},
               {call("reserve_hotel",
                     {{"hotel_id", "{h.hotel_id}"}, {"customer_id", "{c.customer_id}"}, {"nights", "{n}"}})},
               "Reserve {n} nights at {h.name} ({h.hotel_id}) for customer {c.customer_id} and give me the "
               "reservation number.",
               "{new.reservation_id}"),
        intent("cancel_hotel", {bind_record("r", "hotel_reservations", {{"status", {"active"}}})},
               {call("cancel_hotel_reservation", {{"reservation_id", "{r.reservation_id}"}})},
               "Cancel hotel reservation {r.reservation_id} and confirm it is no longer active.", "{r'.status}",
               {complication({{{"var", "c"}, {"table", "customers"}, {"ref_of", "r.customer_id"}},
                              bind_value("email", new_email())},
                             {call("update_customer_email",
                                   {{"customer_id", "{c.customer_id}"}, {"email", "{email}"}})},
                             "Also change the email on my profile ({c.customer_id}) to {email}.")}),
        intent("update_email", {bind_record("c", "customers"), bind_value("email", new_email())},
               {call("update_customer_email", {{"customer_id", "{c.customer_id}"}, {"email", "{email}"}})},
               "Update the email for customer {c.customer_id} to {email}.", "{c'.email}"),
        intent("hotel_rate", {bind_record("h", "hotels")}, {call("get_hotel", {{"hotel_id", "{h.hotel_id}"}})},
               "How much is one night at hotel {h.hotel_id} in {h.city}?", "{h.nightly_rate}"),
    };
    return with_pricing(t);
}

DomainTemplate finance()
{
    DomainTemplate t;
    t.name = "finance";
    t.tables = {
        table("customers", "customer_id", "CS", 150,
              {field("name", "string", person_name()), enum_field("segment", {"retail", "private", "business"}),
               field("kyc_status", "enum", pool({"verified", "verified", "pending"}),
                     {{"enum", {"verified", "pending"}}})}),
        table("accounts", "account_id", "AC", 220,
              {ref_field("customer_id", "customers"), enum_field("type", {"checking", "savings"}),
               field("balance", "number", real_range(100, 20000)),
               field("status", "enum", pool({"active", "active", "active", "frozen", "closed"}),
                     {{"enum", {"active", "frozen", "closed"}}}),
               enum_field("currency", {"USD", "EUR"})}),
        table("cards", "card_id", "CD", 120,
              {ref_field("account_id", "accounts"),
               field("status", "enum", pool({"active", "active", "blocked", "expired"}),
                     {{"enum", {"active", "blocked", "expired"}}}),
               field("credit_limit", "number", pool({500, 1000, 2000, 3000, 5000}))}),
        table("transactions", "transaction_id", "TX", 146,
              {ref_field("account_id", "accounts"), field("amount", "number", real_range(5, 2000)),
               field("merchant", "string", pool({"GroceryMart", "FuelCo", "BookNook", "AirFly", "CloudHost"})),
               field("status", "enum", pool({"posted", "posted", "pending", "disputed"}),
                     {{"enum", {"posted", "pending", "disputed"}}})}),
        table("loans", "loan_id", "LN", 50,
              {ref_field("customer_id", "customers"), field("principal", "number", real_range(1000, 50000)),
               field("rate", "number", real_range(2, 12)),
               field("status", "enum", pool({"active", "active", "paid", "defaulted"}),
                     {{"enum", {"active", "paid", "defaulted"}}})}),
    };
    json active = json::array({"active"});
    t.tools = {
        tool("get_customer", "Look up a bank customer.", {param("customer_id", "string", "customer id")},
             read_op("customers", "customer_id")),
        tool("verify_customer", "Mark a pending identity check as verified.",
             {param("customer_id", "string", "customer id")},
             update_op("customers", "customer_id", {set_value("kyc_status", "verified")},
                       {req("kyc_status", {"pending"})})),
        tool("get_account", "Full account record.", {param("account_id", "string", "account id")},
             read_op("accounts", "account_id")),
        tool("get_account_balance", "Balance and currency of an account.",
             {param("account_id", "string", "account id")},
             read_op("accounts", "account_id", {"account_id", "balance", "currency"})),
        tool("list_customer_accounts", "List account ids owned by a customer.",
             {param("customer_id", "string", "customer id")}, list_op("accounts", "customer_id", "customer_id")),
        tool("transfer_funds", "Move money between two active accounts.",
             {param("from_account", "string", "source account id"), param("to_account", "string", "target account id"),
              param("amount", "number", "amount to move")},
             {{"op", "transfer"},
              {"table", "accounts"},
              {"from_param", "from_account"},
              {"to_param", "to_account"},
              {"amount_param", "amount"},
              {"amount_field", "balance"},
              {"floor", 0.0},
              {"require", {req("status", active)}}}),
        tool("deposit", "Deposit money into an active account.",
             {param("account_id", "string", "account id"), param("amount", "number", "amount to deposit")},
             update_op("accounts", "account_id", {add_param("balance", "amount", 1.0)}, {req("status", active)})),
        tool("freeze_account", "Freeze an active account.", {param("account_id", "string", "account id")},
             update_op("accounts", "account_id", {set_value("status", "frozen")}, {req("status", active)})),
        tool("unfreeze_account", "Reactivate a frozen account.", {param("account_id", "string", "account id")},
             update_op("accounts", "account_id", {set_value("status", "active")}, {req("status", {"frozen"})})),
        tool("close_account", "Close an active account.", {param("account_id", "string", "account id")},
             update_op("accounts", "account_id", {set_value("status", "closed")}, {req("status", active)})),
        tool("open_account", "Open a new account for a verified customer.",
             {param("customer_id", "string", "customer id"),
              param("type", "enum", "account type", {"checking", "savings"}),
              param("currency", "enum", "currency", {"USD", "EUR"})},
             create_op("accounts", "AC",
                       {set_param("customer_id", "customer_id"), set_param("type", "type"), set_value("balance", 0.0),
                        set_value("status", "active"), set_param("currency", "currency")},
                       {on_ref(req("kyc_status", {"verified"}), "customer_id")})),
        tool("get_card", "Look up a card.", {param("card_id", "string", "card id")}, read_op("cards", "card_id")),
        tool("list_account_cards", "List card ids linked to an account.",
             {param("account_id", "string", "account id")}, list_op("cards", "account_id", "account_id")),
        tool("block_card", "Block an active card.", {param("card_id", "string", "card id")},
             update_op("cards", "card_id", {set_value("status", "blocked")}, {req("status", active)})),
        tool("unblock_card", "Unblock a blocked card.", {param("card_id", "string", "card id")},
             update_op("cards", "card_id", {set_value("status", "active")}, {req("status", {"blocked"})})),
        tool("set_card_limit", "Change the credit limit of an active card.",
             {param("card_id", "string", "card id"), param("credit_limit", "number", "new limit")},
             update_op("cards", "card_id", {set_param("credit_limit", "credit_limit")}, {req("status", active)})),
        tool("get_transaction", "Look up a transaction.", {param("transaction_id", "string", "transaction id")},
             read_op("transactions", "transaction_id")),
        tool("list_account_transactions", "List transaction ids on an account.",
             {param("account_id", "string", "account id")}, list_op("transactions", "account_id", "account_id")),
        tool("dispute_transaction", "Open a dispute on a posted transaction.",
             {param("transaction_id", "string", "transaction id")},
             update_op("transactions", "transaction_id", {set_value("status", "disputed")},
                       {req("status", {"posted"})})),
        tool("get_loan", "Look up a loan.", {param("loan_id", "string", "loan id")}, read_op("loans", "loan_id")),
        tool("list_customer_loans", "List loan ids of a customer.", {param("customer_id", "string", "customer id")},
             list_op("loans", "customer_id", "customer_id")),
        tool("make_loan_payment", "Pay down the principal of an active loan.",
             {param("loan_id", "string", "loan id"), param("amount", "number", "payment amount")},
             update_op("loans", "loan_id", {add_param("principal", "amount", -1.0, 0.0)}, {req("status", active)})),
    };
    t.intents = {
        intent("transfer",
               {bind_record("a", "accounts", {{"status", active}}, {{"balance", 200}}),
                bind_record("b", "accounts", {{"status", active}}),
                bind_value("amount", {{"frac_of", "a.balance"}, {"range", {0.1, 0.5}}})},
               {call("transfer_funds",
                     {{"from_account", "{a.account_id}"}, {"to_account", "{b.account_id}"}, {"amount", "{amount}"}})},
               "Transfer {amount} from account {a.account_id} to account {b.account_id}, then tell me what is left "
               "in {a.account_id}.",
               "{a'.balance}"),
        intent("block_card", {bind_record("k", "cards", {{"status", active}})},
               {call("block_card", {{"card_id", "{k.card_id}"}})},
               "My card {k.card_id} was stolen. Block it and confirm.", "{k'.status}",
               {complication({bind_record("a", "accounts", {{"status", active}})},
                             {call("freeze_account", {{"account_id", "{a.account_id}"}})},
                             "Freeze account {a.account_id} as well until I sort this out.")}),
        intent("balance", {bind_record("a", "accounts")},
               {call("get_account_balance", {{"account_id", "{a.account_id}"}})},
               "What is the balance of account {a.account_id}?", "{a.balance}",
               {complication({bind_record("x", "transactions", {{"status", {"posted"}}})},
                             {call("dispute_transaction", {{"transaction_id", "{x.transaction_id}"}})},
                             "I also don't recognize transaction {x.transaction_id} at {x.merchant}; please dispute "
                             "it.")}),
        intent("dispute", {bind_record("x", "transactions", {{"status", {"posted"}}})},
               {call("dispute_transaction", {{"transaction_id", "{x.transaction_id}"}})},
               "Please dispute transaction {x.transaction_id} of {x.amount} at {x.merchant}.", "{x'.status}"),
        intent("loan_payment",
               {bind_record("l", "loans", {{"status", active}}, {{"principal", 500}}),
                bind_value("amount", int_range(100, 400))},
               {call("make_loan_payment", {{"loan_id", "{l.loan_id}"}, {"amount", "{amount}"}})},
               "Pay {amount} toward loan {l.loan_id} and tell me the remaining principal.", "{l'.principal}"),
        intent("open_account",
               {bind_record("c", "customers", {{"kyc_status", {"verified"}}}),
                bind_value("type", pool({"checking", "savings"})), bind_value("currency", pool({"USD", "EUR"}))},
               {call("open_account",
                     {{"customer_id", "{c.customer_id}"}, {"type", "{type}"}, {"currency", "{currency}"}})},
               "Open a {currency} {type} account for {c.name} ({c.customer_id}) and give me the account number.",
               "{new.account_id}",
               {complication({bind_record("p", "customers", {{"kyc_status", {"pending"}}})},
                             {call("verify_customer", {{"customer_id", "{p.customer_id}"}})},
                             "Their business partner {p.customer_id} has now provided documents; mark that identity "
                             "check as verified too.")}),
        intent("card_limit",
               {bind_record("k", "cards", {{"status", active}}),
                bind_value("limit", pool({1500, 2500, 4000, 7500}))},
               {call("set_card_limit", {{"card_id", "{k.card_id}"}, {"credit_limit", "{limit}"}})},
               "Set the credit limit of card {k.card_id} to {limit}.", "{k'.credit_limit}"),
        intent("list_accounts", {bind_record("a", "accounts")},
               {call("list_customer_accounts", {{"customer_id", "{a.customer_id}"}})},
               "Which accounts does customer {a.customer_id} hold with us?", "{a.account_id}"),
        intent("deposit",
               {bind_record("a", "accounts", {{"status", active}}), bind_value("amount", real_range(20, 500))},
               {call("deposit", {{"account_id", "{a.account_id}"}, {"amount", "{amount}"}})},
               "Deposit {amount} into account {a.account_id} and tell me the new balance.", "{a'.balance}"),
        intent("unblock_card", {bind_record("k", "cards", {{"status", {"blocked"}}})},
               {call("unblock_card", {{"card_id", "{k.card_id}"}})},
               "I found my card {k.card_id}; please unblock it.", "{k'.status}"),
    };
    return with_pricing(t);
}

DomainTemplate medicine()
{
    DomainTemplate t;
    t.name = "medicine";
    const std::vector<std::string> specialties{"cardiology", "dermatology", "general", "pediatrics", "neurology"};
    t.tables = {
        table("patients", "patient_id", "PT", 300,
              {field("name", "string", person_name()), field("birth_date", "date", date_range("1940-01-01", 29000)),
               enum_field("insurance", {"public", "private", "none"}),
               field("allergy", "string", pool({"none", "penicillin", "latex", "pollen", "peanuts"}))}),
        table("doctors", "doctor_id", "DR", 60,
              {field("name", "string", person_name()), enum_field("specialty", specialties),
               field("accepting_patients", "boolean", {{"bool", 0.75}}),
               field("open_slots", "integer", int_range(0, 10))}),
        table("appointments", "appointment_id", "AP", 360,
              {ref_field("patient_id", "patients"), ref_field("doctor_id", "doctors"),
               field("date", "date", date_range("2026-10-01", 120)),
               field("status", "enum", pool({"scheduled", "scheduled", "completed", "cancelled", "no_show"}),
                     {{"enum", {"scheduled", "completed", "cancelled", "no_show"}}})}),
        table("prescriptions", "prescription_id", "RX", 200,
              {ref_field("patient_id", "patients"), ref_field("doctor_id", "doctors"),
               field("drug", "string", pool({"atorvastatin", "metformin", "lisinopril", "amoxicillin", "sertraline"})),
               field("refills_left", "integer", int_range(0, 5)),
               field("status", "enum", pool({"active", "active", "expired", "revoked"}),
                     {{"enum", {"active", "expired", "revoked"}}})}),
    };
    json scheduled = json::array({"scheduled"});
    t.tools = {
        tool("get_patient", "Look up a patient record.", {param("patient_id", "string", "patient id")},
             read_op("patients", "patient_id")),
        tool("update_patient_insurance", "Change a patient's insurance.",
             {param("patient_id", "string", "patient id"),
              param("insurance", "enum", "insurance type", {"public", "private", "none"})},
             update_op("patients", "patient_id", {set_param("insurance", "insurance")})),
        tool("update_patient_allergy", "Record a patient's allergy.",
             {param("patient_id", "string", "patient id"), param("allergy", "string", "allergy")},
             update_op("patients", "patient_id", {set_param("allergy", "allergy")})),
        tool("get_doctor", "Look up a doctor.", {param("doctor_id", "string", "doctor id")},
             read_op("doctors", "doctor_id")),
        tool("list_doctors_by_specialty", "List doctor ids in a specialty.",
             {param("specialty", "enum", "specialty", specialties)}, list_op("doctors", "specialty", "specialty")),
        tool("set_doctor_accepting", "Open or close a doctor's list to new patients.",
             {param("doctor_id", "string", "doctor id"), param("accepting", "boolean", "accepting new patients")},
             update_op("doctors", "doctor_id", {set_param("accepting_patients", "accepting")})),
        tool("get_appointment", "Full appointment record.", {param("appointment_id", "string", "appointment id")},
             read_op("appointments", "appointment_id")),
        tool("get_appointment_status", "Status and date of an appointment.",
             {param("appointment_id", "string", "appointment id")},
             read_op("appointments", "appointment_id", {"appointment_id", "status", "date"})),
        tool("list_patient_appointments", "List appointment ids of a patient.",
             {param("patient_id", "string", "patient id")}, list_op("appointments", "patient_id", "patient_id")),
        tool("book_appointment", "Book an appointment with a doctor who accepts patients.",
             {param("doctor_id", "string", "doctor id"), param("patient_id", "string", "patient id"),
              param("date", "string", "date, YYYY-MM-DD")},
             create_op("appointments", "AP",
                       {set_param("doctor_id", "doctor_id"), set_param("patient_id", "patient_id"),
                        set_param("date", "date"), set_value("status", "scheduled")},
                       {on_ref(req("accepting_patients", {true}), "doctor_id")},
                       {on_ref(add_value("open_slots", -1, 0.0), "doctor_id")})),
        tool("cancel_appointment", "Cancel a scheduled appointment.",
             {param("appointment_id", "string", "appointment id")},
             update_op("appointments", "appointment_id", {set_value("status", "cancelled")},
                       {req("status", scheduled)})),
        tool("reschedule_appointment", "Move a scheduled appointment to another date.",
             {param("appointment_id", "string", "appointment id"), param("date", "string", "date, YYYY-MM-DD")},
             update_op("appointments", "appointment_id", {set_param("date", "date")}, {req("status", scheduled)})),
        tool("complete_appointment", "Mark a scheduled appointment as completed.",
             {param("appointment_id", "string", "appointment id")},
             update_op("appointments", "appointment_id", {set_value("status", "completed")},
                       {req("status", scheduled)})),
        tool("record_no_show", "Mark a scheduled appointment as a no-show.",
             {param("appointment_id", "string", "appointment id")},
             update_op("appointments", "appointment_id", {set_value("status", "no_show")},
                       {req("status", scheduled)})),
        tool("get_prescription", "Look up a prescription.", {param("prescription_id", "string", "prescription id")},
             read_op("prescriptions", "prescription_id")),
        tool("list_patient_prescriptions", "List prescription ids of a patient.",
             {param("patient_id", "string", "patient id")}, list_op("prescriptions", "patient_id", "patient_id")),
        tool("refill_prescription", "Use one refill of an active prescription.",
             {param("prescription_id", "string", "prescription id")},
             update_op("prescriptions", "prescription_id", {add_value("refills_left", -1, 0.0)},
                       {req("status", {"active"})})),
        tool("renew_prescription", "Renew an expired prescription with a number of refills.",
             {param("prescription_id", "string", "prescription id"), param("refills", "number", "refills granted")},
             update_op("prescriptions", "prescription_id",
                       {set_value("status", "active"), set_param("refills_left", "refills")},
                       {req("status", {"expired"})})),
        tool("revoke_prescription", "Revoke an active prescription.",
             {param("prescription_id", "string", "prescription id")},
             update_op("prescriptions", "prescription_id", {set_value("status", "revoked")},
                       {req("status", {"active"})})),
    };
    json open_doctor = bind_record("d", "doctors", {{"accepting_patients", {true}}}, {{"open_slots", 1}});
    json visit_date = bind_value("date", date_range("2026-11-02", 60));
    t.intents = {
        intent("book_appointment", {bind_record("p", "patients"), open_doctor, visit_date},
               {call("book_appointment",
                     {{"doctor_id", "{d.doctor_id}"}, {"patient_id", "{p.patient_id}"}, {"date", "{date}"}})},
               "Book {p.name} ({p.patient_id}) with Dr. {d.name} ({d.doctor_id}) on {date} and give me the "
               "appointment number.",
               "{new.appointment_id}",
               {complication({bind_record("x", "prescriptions", {{"status", {"active"}}}, {{"refills_left", 1}})},
                             {call("refill_prescription", {{"prescription_id", "{x.prescription_id}"}})},
                             "While you're at it, refill prescription {x.prescription_id}.")}),
        intent("cancel_appointment", {bind_record("a", "appointments", {{"status", scheduled}})},
               {call("cancel_appointment", {{"appointment_id", "{a.appointment_id}"}})},
               "Please cancel appointment {a.appointment_id} on {a.date} and confirm.", "{a'.status}",
               {complication({open_doctor, visit_date},
                             {call("book_appointment", {{"doctor_id", "{d.doctor_id}"},
                                                        {"patient_id", "{a.patient_id}"},
                                                        {"date", "{date}"}})},
                             "Then book the same patient with Dr. {d.name} ({d.doctor_id}) on {date} and tell me the "
                             "new appointment number.",
                             "{new.appointment_id}")}),
        intent("reschedule", {bind_record("a", "appointments", {{"status", scheduled}}), visit_date},
               {call("reschedule_appointment", {{"appointment_id", "{a.appointment_id}"}, {"date", "{date}"}})},
               "Move appointment {a.appointment_id} to {date} and confirm the date on file.", "{a'.date}"),
        intent("refill", {bind_record("x", "prescriptions", {{"status", {"active"}}}, {{"refills_left", 1}})},
               {call("refill_prescription", {{"prescription_id", "{x.prescription_id}"}})},
               "Refill my {x.drug} prescription {x.prescription_id} and tell me how many refills remain.",
               "{x'.refills_left}"),
        intent("renew",
               {bind_record("x", "prescriptions", {{"status", {"expired"}}}), bind_value("n", int_range(1, 3))},
               {call("renew_prescription", {{"prescription_id", "{x.prescription_id}"}, {"refills", "{n}"}})},
               "Renew expired prescription {x.prescription_id} with {n} refills.", "{x'.status}"),
        intent("appointment_status", {bind_record("a", "appointments")},
               {call("get_appointment_status", {{"appointment_id", "{a.appointment_id}"}})},
               "What is the status of appointment {a.appointment_id}?", "{a.status}",
               {complication({bind_record("q", "patients"),
                              bind_value("allergy", pool({"penicillin", "latex", "shellfish"}))},
                             {call("update_patient_allergy",
                                   {{"patient_id", "{q.patient_id}"}, {"allergy", "{allergy}"}})},
                             "Also note a {allergy} allergy on patient {q.patient_id}.")}),
        intent("insurance",
               {bind_record("p", "patients"), bind_value("insurance", pool({"public", "private", "none"}))},
               {call("update_patient_insurance", {{"patient_id", "{p.patient_id}"}, {"insurance", "{insurance}"}})},
               "Patient {p.patient_id} switched to {insurance} insurance; please update the record.",
               "{p'.insurance}"),
        intent("specialists", {bind_record("d", "doctors")},
               {call("list_doctors_by_specialty", {{"specialty", "{d.specialty}"}})},
               "Which doctors practice {d.specialty}? I am looking for Dr. {d.name}.", "{d.doctor_id}"),
        intent("revoke", {bind_record("x", "prescriptions", {{"status", {"active"}}})},
               {call("revoke_prescription", {{"prescription_id", "{x.prescription_id}"}})},
               "Revoke prescription {x.prescription_id} for {x.drug}.", "{x'.status}"),
    };
    return with_pricing(t);
}

DomainTemplate ecommerce()
{
    DomainTemplate t;
    t.name = "ecommerce";
    const std::vector<std::string> categories{"books", "garden", "kitchen", "toys", "audio"};
    t.tables = {
        table("customers", "customer_id", "CM", 120,
              {field("name", "string", person_name()), field("email", "string", email_pattern("shop.example")),
               field("loyalty_points", "integer", int_range(0, 5000))}),
        table("products", "product_id", "PR", 150,
              {field("name", "string",
                     {{"pattern", "{a} {b}"},
                      {"pools", {{"a", {"Compact", "Deluxe", "Eco", "Classic", "Smart"}},
                                 {"b", {"Kettle", "Speaker", "Planter", "Puzzle", "Notebook", "Lamp"}}}}}),
               enum_field("category", categories), field("price", "number", real_range(4, 400)),
               field("stock", "integer", int_range(0, 40))}),
        table("orders", "order_id", "OR", 220,
              {ref_field("customer_id", "customers"), ref_field("product_id", "products"),
               field("quantity", "integer", int_range(1, 3)),
               enum_field("status", {"placed", "shipped", "delivered", "cancelled"}),
               enum_field("shipping", {"standard", "express"})}),
        table("returns", "return_id", "RT", 87,
              {ref_field("order_id", "orders"),
               field("reason", "string", pool({"damaged", "wrong item", "changed mind", "late"})),
               enum_field("status", {"requested", "approved", "rejected"})}),
    };
    t.tools = {
        tool("get_customer", "Look up a shopper.", {param("customer_id", "string", "customer id")},
             read_op("customers", "customer_id")),
        tool("update_customer_email", "Change a shopper's email.",
             {param("customer_id", "string", "customer id"), param("email", "string", "new email")},
             update_op("customers", "customer_id", {set_param("email", "email")})),
        tool("add_loyalty_points", "Credit loyalty points to a shopper.",
             {param("customer_id", "string", "customer id"), param("points", "number", "points to add")},
             update_op("customers", "customer_id", {add_param("loyalty_points", "points", 1.0)})),
        tool("get_product", "Look up a product.", {param("product_id", "string", "product id")},
             read_op("products", "product_id")),
        tool("list_products_by_category", "List product ids in a category.",
             {param("category", "enum", "category", categories)}, list_op("products", "category", "category")),
        tool("get_order", "Look up an order.", {param("order_id", "string", "order id")},
             read_op("orders", "order_id")),
        tool("list_customer_orders", "List order ids of a shopper.", {param("customer_id", "string", "customer id")},
             list_op("orders", "customer_id", "customer_id")),
        tool("place_order", "Place an order; stock is reserved immediately.",
             {param("product_id", "string", "product id"), param("customer_id", "string", "customer id"),
              param("quantity", "number", "units"),
              param("shipping", "enum", "shipping speed", {"standard", "express"})},
             create_op("orders", "OR",
                       {set_param("product_id", "product_id"), set_param("customer_id", "customer_id"),
                        set_param("quantity", "quantity"), set_value("status", "placed"),
                        set_param("shipping", "shipping")},
                       {}, {on_ref(add_param("stock", "quantity", -1.0, 0.0), "product_id")})),
        tool("cancel_order", "Cancel an order that has not shipped.", {param("order_id", "string", "order id")},
             update_op("orders", "order_id", {set_value("status", "cancelled")}, {req("status", {"placed"})})),
        tool("upgrade_shipping", "Upgrade an unshipped order to express.", {param("order_id", "string", "order id")},
             update_op("orders", "order_id", {set_value("shipping", "express")}, {req("status", {"placed"})})),
        tool("mark_delivered", "Mark a shipped order as delivered.", {param("order_id", "string", "order id")},
             update_op("orders", "order_id", {set_value("status", "delivered")}, {req("status", {"shipped"})})),
        tool("request_return", "Open a return for a delivered order.",
             {param("order_id", "string", "order id"), param("reason", "string", "reason")},
             create_op("returns", "RT",
                       {set_param("order_id", "order_id"), set_param("reason", "reason"),
                        set_value("status", "requested")},
                       {on_ref(req("status", {"delivered"}), "order_id")})),
        tool("get_return", "Look up a return.", {param("return_id", "string", "return id")},
             read_op("returns", "return_id")),
        tool("approve_return", "Approve a requested return.", {param("return_id", "string", "return id")},
             update_op("returns", "return_id", {set_value("status", "approved")}, {req("status", {"requested"})})),
        tool("reject_return", "Reject a requested return.", {param("return_id", "string", "return id")},
             update_op("returns", "return_id", {set_value("status", "rejected")}, {req("status", {"requested"})})),
    };
    t.intents = {
        intent("place_order",
               {bind_record("c", "customers"), bind_record("p", "products", json::object(), {{"stock", 3}}),
                bind_value("q", int_range(1, 3)), bind_value("ship", pool({"standard", "express"}))},
               {call("place_order", {{"product_id", "{p.product_id}"},
                                     {"customer_id", "{c.customer_id}"},
                                     {"quantity", "{q}"},
                                     {"shipping", "{ship}"}})},
               "Order {q} x {p.name} ({p.product_id}) for {c.customer_id} with {ship} shipping and give me the "
               "order number.",
               "{new.order_id}",
               {complication({bind_record("o", "orders", {{"status", {"placed"}}})},
                             {call("upgrade_shipping", {{"order_id", "{o.order_id}"}})},
                             "My earlier order {o.order_id} should go express too.")}),
        intent("cancel_order", {bind_record("o", "orders", {{"status", {"placed"}}})},
               {call("cancel_order", {{"order_id", "{o.order_id}"}})},
               "Cancel order {o.order_id} before it ships and confirm.", "{o'.status}",
               {complication({{{"var", "c"}, {"table", "customers"}, {"ref_of", "o.customer_id"}},
                              bind_value("points", int_range(50, 200))},
                             {call("add_loyalty_points", {{"customer_id", "{c.customer_id}"}, {"points", "{points}"}})},
                             "Credit {points} loyalty points to {c.customer_id} for the trouble and tell me the new "
                             "balance.",
                             "{c'.loyalty_points}")}),
        intent("request_return",
               {bind_record("o", "orders", {{"status", {"delivered"}}}),
                bind_value("reason", pool({"damaged", "wrong item", "changed mind"}))},
               {call("request_return", {{"order_id", "{o.order_id}"}, {"reason", "{reason}"}})},
               "I want to return order {o.order_id} ({reason}). What is the return number?", "{new.return_id}"),
        intent("approve_return", {bind_record("r", "returns", {{"status", {"requested"}}})},
               {call("approve_return", {{"return_id", "{r.return_id}"}})},
               "Approve return {r.return_id} for order {r.order_id}.", "{r'.status}"),
        intent("order_status", {bind_record("o", "orders")}, {call("get_order", {{"order_id", "{o.order_id}"}})},
               "Where is my order {o.order_id}?", "{o.status}"),
        intent("product_price", {bind_record("p", "products")},
               {call("get_product", {{"product_id", "{p.product_id}"}})},
               "How much does product {p.product_id} cost?", "{p.price}"),
        intent("list_orders", {bind_record("o", "orders")},
               {call("list_customer_orders", {{"customer_id", "{o.customer_id}"}})},
               "List every order placed by customer {o.customer_id}.", "{o.order_id}"),
        intent("mark_delivered", {bind_record("o", "orders", {{"status", {"shipped"}}})},
               {call("mark_delivered", {{"order_id", "{o.order_id}"}})},
               "The courier confirmed order {o.order_id} arrived; please update it.", "{o'.status}"),
    };
    return with_pricing(t);
}

DomainTemplate restaurant()
{
    DomainTemplate t;
    t.name = "restaurant";
    const std::vector<std::string> cuisines{"italian", "japanese", "mexican", "indian", "lebanese"};
    t.tables = {
        table("restaurants", "restaurant_id", "RS", 60,
              {field("name", "string",
                     {{"pattern", "{a} {b}"},
                      {"pools", {{"a", {"Blue", "Little", "Golden", "Corner", "Twin"}},
                                 {"b", {"Fig", "Lantern", "Olive", "Bamboo", "Pepper"}}}}}),
               enum_field("cuisine", cuisines), field("city", "string", pool(cities)),
               field("open", "boolean", {{"bool", 0.8}}), field("capacity_left", "integer", int_range(0, 40))}),
        table("menu_items", "item_id", "MI", 250,
              {ref_field("restaurant_id", "restaurants"),
               field("name", "string", pool({"soup", "salad", "curry", "tacos", "ramen", "risotto", "falafel"})),
               field("price", "number", real_range(4, 45)), field("available", "boolean", {{"bool", 0.85}})}),
        table("guests", "guest_id", "GS", 120,
              {field("name", "string", person_name()),
               field("phone", "string", {{"pattern", "+1-555-01{n}"}, {"pools", {{"n", {10, 23, 37, 48, 56, 64, 79, 91}}}}}),
               field("vip", "boolean", {{"bool", 0.2}})}),
        table("reservations", "reservation_id", "RV", 200,
              {ref_field("guest_id", "guests"), ref_field("restaurant_id", "restaurants"),
               field("party_size", "integer", int_range(1, 8)), field("date", "date", date_range("2026-11-01", 60)),
               field("status", "enum", pool({"booked", "booked", "seated", "cancelled", "no_show"}),
                     {{"enum", {"booked", "seated", "cancelled", "no_show"}}})}),
        table("reviews", "review_id", "RW", 53,
              {ref_field("guest_id", "guests"), ref_field("restaurant_id", "restaurants"),
               field("rating", "integer", int_range(1, 5)),
               field("status", "enum", pool({"published", "published", "flagged"}),
                     {{"enum", {"published", "flagged"}}})}),
    };
    json booked = json::array({"booked"});
    t.tools = {
        tool("get_restaurant", "Look up a restaurant.", {param("restaurant_id", "string", "restaurant id")},
             read_op("restaurants", "restaurant_id")),
        tool("list_restaurants_by_city", "List restaurant ids in a city.", {param("city", "string", "city")},
             list_op("restaurants", "city", "city")),
        tool("list_restaurants_by_cuisine", "List restaurant ids serving a cuisine.",
             {param("cuisine", "enum", "cuisine", cuisines)}, list_op("restaurants", "cuisine", "cuisine")),
        tool("set_restaurant_open", "Open or close a restaurant for bookings.",
             {param("restaurant_id", "string", "restaurant id"), param("open", "boolean", "open for bookings")},
             update_op("restaurants", "restaurant_id", {set_param("open", "open")})),
        tool("get_menu_item", "Look up a menu item.", {param("item_id", "string", "item id")},
             read_op("menu_items", "item_id")),
        tool("list_menu_items", "List item ids on a restaurant's menu.",
             {param("restaurant_id", "string", "restaurant id")},
             list_op("menu_items", "restaurant_id", "restaurant_id")),
        tool("set_item_availability", "Mark a menu item available or sold out.",
             {param("item_id", "string", "item id"), param("available", "boolean", "available")},
             update_op("menu_items", "item_id", {set_param("available", "available")})),
        tool("update_item_price", "Change the price of a menu item.",
             {param("item_id", "string", "item id"), param("price", "number", "new price")},
             update_op("menu_items", "item_id", {set_param("price", "price")})),
        tool("get_guest", "Look up a guest.", {param("guest_id", "string", "guest id")},
             read_op("guests", "guest_id")),
        tool("update_guest_phone", "Change a guest's phone number.",
             {param("guest_id", "string", "guest id"), param("phone", "string", "phone number")},
             update_op("guests", "guest_id", {set_param("phone", "phone")})),
        tool("set_guest_vip", "Set or clear a guest's VIP flag.",
             {param("guest_id", "string", "guest id"), param("vip", "boolean", "VIP")},
             update_op("guests", "guest_id", {set_param("vip", "vip")})),
        tool("get_reservation", "Look up a reservation.", {param("reservation_id", "string", "reservation id")},
             read_op("reservations", "reservation_id")),
        tool("list_guest_reservations", "List reservation ids of a guest.", {param("guest_id", "string", "guest id")},
             list_op("reservations", "guest_id", "guest_id")),
        tool("make_reservation", "Reserve a table at an open restaurant.",
             {param("restaurant_id", "string", "restaurant id"), param("guest_id", "string", "guest id"),
              param("party_size", "number", "party size"), param("date", "string", "date, YYYY-MM-DD")},
             create_op("reservations", "RV",
                       {set_param("restaurant_id", "restaurant_id"), set_param("guest_id", "guest_id"),
                        set_param("party_size", "party_size"), set_param("date", "date"),
                        set_value("status", "booked")},
                       {on_ref(req("open", {true}), "restaurant_id")},
                       {on_ref(add_param("capacity_left", "party_size", -1.0, 0.0), "restaurant_id")})),
        tool("cancel_reservation", "Cancel a booked reservation.",
             {param("reservation_id", "string", "reservation id")},
             update_op("reservations", "reservation_id", {set_value("status", "cancelled")}, {req("status", booked)})),
        tool("change_party_size", "Change the party size of a booked reservation.",
             {param("reservation_id", "string", "reservation id"), param("party_size", "number", "party size")},
             update_op("reservations", "reservation_id", {set_param("party_size", "party_size")},
                       {req("status", booked)})),
        tool("reschedule_reservation", "Move a booked reservation to another date.",
             {param("reservation_id", "string", "reservation id"), param("date", "string", "date, YYYY-MM-DD")},
             update_op("reservations", "reservation_id", {set_param("date", "date")}, {req("status", booked)})),
        tool("seat_reservation", "Seat the party of a booked reservation.",
             {param("reservation_id", "string", "reservation id")},
             update_op("reservations", "reservation_id", {set_value("status", "seated")}, {req("status", booked)})),
        tool("mark_no_show", "Mark a booked reservation as a no-show.",
             {param("reservation_id", "string", "reservation id")},
             update_op("reservations", "reservation_id", {set_value("status", "no_show")}, {req("status", booked)})),
        tool("get_review", "Look up a review.", {param("review_id", "string", "review id")},
             read_op("reviews", "review_id")),
        tool("list_restaurant_reviews", "List review ids of a restaurant.",
             {param("restaurant_id", "string", "restaurant id")}, list_op("reviews", "restaurant_id", "restaurant_id")),
        tool("flag_review", "Flag a published review for moderation.", {param("review_id", "string", "review id")},
             update_op("reviews", "review_id", {set_value("status", "flagged")}, {req("status", {"published"})})),
        tool("remove_review", "Delete a flagged review.", {param("review_id", "string", "review id")},
             remove_op("reviews", "review_id", {req("status", {"flagged"})})),
    };
    t.intents = {
        intent("make_reservation",
               {bind_record("g", "guests"),
                bind_record("r", "restaurants", {{"open", {true}}}, {{"capacity_left", 8}}),
                bind_value("n", int_range(2, 6)), bind_value("date", date_range("2026-11-05", 45))},
               {call("make_reservation", {{"restaurant_id", "{r.restaurant_id}"},
                                          {"guest_id", "{g.guest_id}"},
                                          {"party_size", "{n}"},
                                          {"date", "{date}"}})},
               "Book a table for {n} at {r.name} ({r.restaurant_id}) on {date} for guest {g.guest_id} and give me "
               "the reservation number.",
               "{new.reservation_id}",
               {complication({bind_record("v", "reservations", {{"status", booked}})},
                             {call("cancel_reservation", {{"reservation_id", "{v.reservation_id}"}})},
                             "And cancel the older reservation {v.reservation_id}.")}),
        intent("cancel_reservation", {bind_record("v", "reservations", {{"status", booked}})},
               {call("cancel_reservation", {{"reservation_id", "{v.reservation_id}"}})},
               "Cancel reservation {v.reservation_id} for {v.date} and confirm.", "{v'.status}"),
        intent("party_size",
               {bind_record("v", "reservations", {{"status", booked}}), bind_value("n", int_range(1, 8))},
               {call("change_party_size", {{"reservation_id", "{v.reservation_id}"}, {"party_size", "{n}"}})},
               "We will be {n} people for reservation {v.reservation_id}; please update it.", "{v'.party_size}"),
        intent("menu_price", {bind_record("m", "menu_items")}, {call("get_menu_item", {{"item_id", "{m.item_id}"}})},
               "What does menu item {m.item_id} cost?", "{m.price}",
               {complication({bind_record("w", "reviews", {{"status", {"published"}}})},
                             {call("flag_review", {{"review_id", "{w.review_id}"}})},
                             "Also flag review {w.review_id}; it looks like spam.")}),
        intent("sold_out", {bind_record("m", "menu_items", {{"available", {true}}})},
               {call("set_item_availability", {{"item_id", "{m.item_id}"}, {"available", false}})},
               "We ran out of {m.name} (item {m.item_id}); mark it unavailable.", "{m'.available}"),
        intent("flag_review", {bind_record("w", "reviews", {{"status", {"published"}}})},
               {call("flag_review", {{"review_id", "{w.review_id}"}})},
               "Please flag review {w.review_id} for moderation.", "{w'.status}",
               {complication({bind_record("z", "reviews", {{"status", {"flagged"}}})},
                             {call("remove_review", {{"review_id", "{z.review_id}"}})},
                             "And delete review {z.review_id}, which was flagged earlier.")}),
        intent("city_restaurants", {bind_record("r", "restaurants")},
               {call("list_restaurants_by_city", {{"city", "{r.city}"}})},
               "Which restaurants do you list in {r.city}?", "{r.restaurant_id}"),
        intent("vip", {bind_record("g", "guests", {{"vip", {false}}})},
               {call("set_guest_vip", {{"guest_id", "{g.guest_id}"}, {"vip", true}})},
               "Make guest {g.guest_id} a VIP.", "{g'.vip}"),
        intent("seat", {bind_record("v", "reservations", {{"status", booked}})},
               {call("seat_reservation", {{"reservation_id", "{v.reservation_id}"}})},
               "The party for reservation {v.reservation_id} has arrived; seat them.", "{v'.status}"),
        intent("item_price", {bind_record("m", "menu_items"), bind_value("price", real_range(5, 40))},
               {call("update_item_price", {{"item_id", "{m.item_id}"}, {"price", "{price}"}})},
               "Change the price of item {m.item_id} to {price}.", "{m'.price}"),
    };
    return with_pricing(t);
}

}  // namespace

PricingTable domain_pricing()
{
    return {{"domain_function", PricingEntry{0.0, 0.0, 0.0001}}};
}

LatencyTable domain_latency()
{
    return {{"domain_function", LatencyModel{0.05, 0.0, JitterPolicy::deterministic, 0.0}}};
}

std::vector<std::string> builtin_domains()
{
    return {"travel", "finance", "medicine", "ecommerce", "restaurant"};
}

DomainTemplate builtin_template(std::string_view domain)
{
    if (domain == "travel") return travel();
    if (domain == "finance") return finance();
    if (domain == "medicine") return medicine();
    if (domain == "ecommerce") return ecommerce();
    if (domain == "restaurant") return restaurant();
    throw ConfigError("unknown domain " + std::string(domain));
}

}  // namespace orchestra
