#!/usr/bin/env python3
"""Write the shared 100-string text-classification fixture corpus.

Used by the pipeline tests and by the model service's parity tests: the
service stub must label every string exactly like the built-in keyword
fallback. Mix of privacy-related UI strings across all data types and
neutral strings, with casing/punctuation/joined-word edge cases.
"""

import json
from pathlib import Path

STRINGS = [
    # names / identity
    "Enter your first name", "Full name required", "What is your surname?",
    "Given name and family name", "Update your real name",
    # birthday
    "use your birthday", "Date of birth: MM/DD/YYYY", "Enter DOB to verify age",
    "Birth year is optional", "We check your birth date",
    # address
    "Add a shipping address", "Billing address on file", "Residential address",
    "Your residence information", "Postal address line 1", "Mailing address update",
    # phone
    "Add your phone number", "Verify via mobile", "Telephone support available",
    "Call me back", "Mobile phone verification code", "telephone number required",
    # email
    "Enter your email", "E-Mail Address", "Confirm e-mail to continue",
    "Email address already in use", "Contact us by e-mail address",
    # profile
    "Complete your profile", "Account settings", "Delete my account",
    "Switch to business profile",
    # contacts
    "Sync your contacts", "Import from phone book", "Allow access to phone-book",
    "Find friends in your device's address book",
    # location
    "Share your location", "Enable precise geo-location", "Use my current location",
    "Turn on geography services", "your locationWe may share", "Locate me on the map",
    "GEO tracking consent", "precision location toggle",
    # photos / media
    "Allow camera access", "Choose from gallery", "Upload a photo",
    "Scan a document", "Pick an image", "Record a video", "Open photo library",
    "Grant storage permission", "View album", "Take a picture now",
    "Use the scanner", "Attach a photograph",
    # voices
    "Enable microphone", "Voice search", "Tap the mic to talk",
    "Speech recognition settings", "Talk to support",
    # financial
    "Add a credit card", "Pay now", "Payment methods", "Company details",
    "Invoice for your organization", "Organizations you follow",
    "Companies near you",
    # social media
    "Connect with Facebook", "Follow us on Twitter", "Share to social media",
    "Share", "Link your socialmedia accounts",
    # neutral strings
    "Welcome back!", "Settings", "Dark mode", "Notifications", "Help center",
    "Terms of service", "About this app", "Version 4.2.1", "Log out",
    "Continue as guest", "Skip for now", "Next", "Back", "Submit", "Cancel",
    "Search products", "Trending today", "Your cart is empty", "Checkout complete",
    "Order history", "Track my package", "Weather forecast", "Sports news",
    "Music playlists", "Battery saver enabled", "Wi-Fi connected",
    "Bluetooth devices", "Privacy matters to us",
]


def main():
    assert len(STRINGS) == 100, f"corpus has {len(STRINGS)} strings, need 100"
    assert len(set(STRINGS)) == 100, "corpus strings must be unique"
    out = Path(__file__).resolve().parent.parent / "src" / "cppgen" / "data" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    path = out / "classifier_corpus.json"
    path.write_text(json.dumps({"strings": STRINGS}, indent=1), encoding="utf-8")
    print(f"wrote {len(STRINGS)} strings -> {path}")


if __name__ == "__main__":
    main()
